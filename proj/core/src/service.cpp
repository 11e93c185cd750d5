#include "textscreen/service.hpp"

#include <chrono>
#include <cmath>

#include <httplib.h>
#include <json.hpp>

namespace textscreen {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto end = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(end - start).count();
}

double round4(double value) { return std::round(value * 1e4) / 1e4; }

}  // namespace

Screener::Screener(std::vector<Document> docs, PipelineOptions opts)
    : opts_(std::move(opts)) {
  validate(opts_.filter);
  if (opts_.window_limit < 1) {
    throw ConfigError("window_limit must be >= 1");
  }
  const auto start = std::chrono::steady_clock::now();
  forest_ = Forest::build(std::move(docs), opts_.n_shards);
  summary_.build_ms = elapsed_ms(start);
  summary_.docs = forest_.stats().doc_count();
  summary_.distinct_tokens = forest_.stats().distinct_token_count();
  summary_.trie_nodes = forest_.node_count();
  summary_.shards = forest_.shard_count();
}

bool Screener::weighted_scoring(const ScreenOverrides& overrides) const {
  if (overrides.weighted.has_value()) return *overrides.weighted;
  if (opts_.weighted.has_value()) return *opts_.weighted;
  return !opts_.costs.is_unit();
}

ScreenOutcome Screener::screen_text(std::string_view text,
                                    const ScreenOverrides& overrides) const {
  FilterConfig cfg = opts_.filter;
  if (overrides.k) cfg.k = *overrides.k;
  if (overrides.sigma) cfg.sigma = *overrides.sigma;
  validate(cfg);
  const bool weighted = weighted_scoring(overrides);

  const auto start = std::chrono::steady_clock::now();
  const ExpandedQuery expanded = expand_query(text, opts_.window_limit);
  std::vector<ScoredResult> results = search_forest(
      forest_, expanded, opts_.costs, opts_.schedule, cfg, weighted);

  ScreenOutcome outcome;
  outcome.query = std::string(text);
  outcome.results = std::move(results);
  outcome.latency_ms = elapsed_ms(start);
  return outcome;
}

ScreenOutcome Screener::screen_mt(std::string_view raw_message,
                                  const ScreenOverrides& overrides) const {
  const auto start = std::chrono::steady_clock::now();
  const MtMessage msg = parse_mt(raw_message);
  std::string text;
  for (const auto& [tag, field_text] : screenable_fields(msg)) {
    if (!text.empty()) text += ' ';
    text += field_text;
  }
  ScreenOutcome outcome = screen_text(text, overrides);
  outcome.latency_ms = elapsed_ms(start);  // include extraction
  return outcome;
}

ScreenOutcome Screener::screen(std::string_view payload, QueryFormat format,
                               const ScreenOverrides& overrides) const {
  return format == QueryFormat::kMt ? screen_mt(payload, overrides)
                                    : screen_text(payload, overrides);
}

std::string result_json(const ScreenOutcome& outcome) {
  ordered_json results = ordered_json::array();
  for (const ScoredResult& r : outcome.results) {
    ordered_json matches = ordered_json::array();
    for (const ScoredMatch& m : r.matches) {
      matches.push_back({{"q", m.query_token},
                         {"d", m.record_token},
                         {"cost", m.cost},
                         {"sim", m.similarity}});
    }
    results.push_back({{"doc_id", r.doc_id},
                       {"name", r.raw_name},
                       {"score", round4(r.score)},
                       {"matches", std::move(matches)}});
  }
  const ordered_json body = {{"query", outcome.query},
                             {"results", std::move(results)}};
  return body.dump();
}

ScreenService::ScreenService(std::shared_ptr<const Screener> screener)
    : screener_(std::move(screener)) {}

void ScreenService::install(std::shared_ptr<const Screener> screener) {
  const std::lock_guard<std::mutex> lock(mu_);
  screener_ = std::move(screener);
}

std::shared_ptr<const Screener> ScreenService::current() const {
  const std::lock_guard<std::mutex> lock(mu_);
  return screener_;
}

bool ScreenService::ready() const { return current() != nullptr; }

namespace {

ServiceReply error_reply(int status, const std::string& message) {
  const ordered_json body = {{"error", message}};
  return {status, body.dump(), 0.0};
}

}  // namespace

ServiceReply ScreenService::handle_screen(std::string_view request_body) const {
  const std::shared_ptr<const Screener> screener = current();
  if (!screener) {
    return error_reply(503, "index not loaded");
  }

  std::string text;
  QueryFormat format = QueryFormat::kText;
  ScreenOverrides overrides;
  try {
    const json req = json::parse(request_body);
    if (!req.is_object() || !req.contains("text") ||
        !req.at("text").is_string()) {
      return error_reply(400, "request must be an object with a string 'text'");
    }
    text = req.at("text").get<std::string>();
    if (req.contains("format")) {
      const std::string f = req.at("format").get<std::string>();
      if (f == "mt") {
        format = QueryFormat::kMt;
      } else if (f != "text") {
        return error_reply(400, "format must be 'mt' or 'text'");
      }
    }
    if (req.contains("k")) overrides.k = req.at("k").get<int>();
    if (req.contains("sigma")) overrides.sigma = req.at("sigma").get<double>();
    if (req.contains("weighted")) {
      overrides.weighted = req.at("weighted").get<bool>();
    }
  } catch (const json::exception& e) {
    return error_reply(400, std::string("bad request: ") + e.what());
  }

  try {
    const ScreenOutcome outcome = screener->screen(text, format, overrides);
    return {200, result_json(outcome), outcome.latency_ms};
  } catch (const ParseError& e) {  // covers MtParseError
    return error_reply(400, e.what());
  } catch (const ConfigError& e) {
    return error_reply(400, e.what());
  }
}

ServiceReply ScreenService::handle_health() const {
  const std::shared_ptr<const Screener> screener = current();
  if (!screener) {
    const ordered_json body = {{"status", "loading"}};
    return {503, body.dump(), 0.0};
  }
  const IndexSummary& s = screener->summary();
  const ordered_json body = {{"status", "ok"},
                             {"docs", s.docs},
                             {"distinct_tokens", s.distinct_tokens},
                             {"trie_nodes", s.trie_nodes},
                             {"shards", s.shards}};
  return {200, body.dump(), 0.0};
}

int run_http_server(ScreenService& service, const std::string& host,
                    int port) {
  httplib::Server server;

  server.Post("/screen", [&service](const httplib::Request& req,
                                    httplib::Response& res) {
    const ServiceReply reply = service.handle_screen(req.body);
    res.status = reply.status;
    if (reply.status == 200) {
      char latency[32];
      std::snprintf(latency, sizeof latency, "%.3f", reply.latency_ms);
      res.set_header("X-Latency-Ms", latency);
    }
    res.set_content(reply.body, "application/json");
  });
  server.Get("/health", [&service](const httplib::Request&,
                                   httplib::Response& res) {
    const ServiceReply reply = service.handle_health();
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  });

  if (!server.bind_to_port(host, port)) {
    return 1;
  }
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace textscreen
