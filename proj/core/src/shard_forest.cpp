#include "textscreen/shard_forest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace textscreen {

using nlohmann::json;

ShardPlan ShardPlan::round_robin(std::size_t n_docs, std::size_t n_shards) {
  if (n_shards < 1) throw ConfigError("shard count must be >= 1");
  ShardPlan plan;
  plan.n_shards = n_shards;
  plan.shard_by_position.resize(n_docs);
  for (std::size_t i = 0; i < n_docs; ++i) {
    plan.shard_by_position[i] = i % n_shards;
  }
  return plan;
}

Forest Forest::build(std::vector<Document> docs, std::size_t n_shards) {
  Forest forest;
  forest.stats_ = DictionaryStats::build(std::move(docs));
  if (n_shards > forest.stats_.doc_count()) {
    throw ConfigError("shard count " + std::to_string(n_shards) +
                      " exceeds document count " +
                      std::to_string(forest.stats_.doc_count()));
  }
  forest.plan_ = ShardPlan::round_robin(forest.stats_.doc_count(), n_shards);

  std::vector<std::vector<DocId>> ids_by_shard(n_shards);
  const auto& documents = forest.stats_.documents();
  for (std::size_t i = 0; i < documents.size(); ++i) {
    ids_by_shard[forest.plan_.shard_by_position[i]].push_back(documents[i].id);
  }
  forest.tries_.reserve(n_shards);
  for (std::size_t s = 0; s < n_shards; ++s) {
    forest.tries_.push_back(TrieIndex::build(forest.stats_, ids_by_shard[s]));
  }
  return forest;
}

std::size_t Forest::node_count() const noexcept {
  std::size_t total = 0;
  for (const auto& trie : tries_) total += trie.node_count();
  return total;
}

ShardResponse run_shard_query(const TrieIndex& trie,
                              const DictionaryStats& stats,
                              const ShardRequest& request,
                              const CostModel& costs,
                              const ThresholdSchedule& schedule) {
  validate(request.cfg);
  CandidateMap candidates = search_query(trie, request.query, costs, schedule);
  candidates = filter_matches(std::move(candidates), stats, request.cfg);

  std::vector<ScoredResult> scored;
  scored.reserve(candidates.size());
  for (const auto& [doc_id, set] : candidates) {
    scored.push_back(score_document(stats.document(doc_id), set, stats,
                                    request.weighted));
  }
  return {top_k(std::move(scored), request.cfg)};
}

std::vector<ScoredResult> search_forest(const Forest& forest,
                                        const ExpandedQuery& query,
                                        const CostModel& costs,
                                        const ThresholdSchedule& schedule,
                                        const FilterConfig& cfg,
                                        bool weighted) {
  validate(cfg);
  std::vector<ScoredResult> merged;
  for (std::size_t s = 0; s < forest.shard_count(); ++s) {
    ShardResponse local = run_shard_query(forest.shard(s), forest.stats(),
                                          {query, cfg, weighted}, costs,
                                          schedule);
    merged.insert(merged.end(),
                  std::make_move_iterator(local.results.begin()),
                  std::make_move_iterator(local.results.end()));
  }
  return top_k(std::move(merged), cfg);
}

// --------------------------------- wire -----------------------------------

namespace {

constexpr std::size_t kMaxFrame = 64u << 20;

json query_to_json(const ExpandedQuery& q) {
  json windows = json::array();
  for (const auto& w : q.windows) {
    windows.push_back({{"token", w.token},
                       {"start", w.span_start},
                       {"width", w.span_width}});
  }
  return {{"base", q.base}, {"windows", std::move(windows)}};
}

ExpandedQuery query_from_json(const json& j) {
  ExpandedQuery q;
  q.base = j.at("base").get<std::vector<std::string>>();
  for (const auto& w : j.at("windows")) {
    q.windows.push_back({w.at("token").get<std::string>(),
                         w.at("start").get<std::size_t>(),
                         w.at("width").get<std::size_t>()});
  }
  return q;
}

json result_to_json(const ScoredResult& r) {
  json matches = json::array();
  for (const auto& m : r.matches) {
    matches.push_back({{"q", m.query_token},
                       {"d", m.record_token},
                       {"cost", m.cost},
                       {"sim", m.similarity}});
  }
  return {{"doc_id", r.doc_id},
          {"name", r.raw_name},
          {"score", r.score},
          {"matches", std::move(matches)}};
}

ScoredResult result_from_json(const json& j) {
  ScoredResult r;
  r.doc_id = j.at("doc_id").get<DocId>();
  r.raw_name = j.at("name").get<std::string>();
  r.score = j.at("score").get<double>();
  for (const auto& m : j.at("matches")) {
    r.matches.push_back({m.at("q").get<std::string>(),
                         m.at("d").get<std::string>(),
                         m.at("cost").get<double>(),
                         m.at("sim").get<double>()});
  }
  return r;
}

}  // namespace

void write_frame(std::ostream& out, std::string_view payload) {
  if (payload.size() > kMaxFrame) {
    throw ParseError("frame", "payload exceeds 64 MiB");
  }
  const auto n = static_cast<std::uint32_t>(payload.size());
  const char header[4] = {
      static_cast<char>((n >> 24) & 0xFF), static_cast<char>((n >> 16) & 0xFF),
      static_cast<char>((n >> 8) & 0xFF), static_cast<char>(n & 0xFF)};
  out.write(header, 4);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  out.flush();
}

std::string read_frame(std::istream& in) {
  char header[4];
  in.read(header, 4);
  if (in.gcount() != 4) {
    throw ParseError("frame", "truncated length prefix");
  }
  const std::uint32_t n =
      (static_cast<std::uint32_t>(static_cast<unsigned char>(header[0])) << 24) |
      (static_cast<std::uint32_t>(static_cast<unsigned char>(header[1])) << 16) |
      (static_cast<std::uint32_t>(static_cast<unsigned char>(header[2])) << 8) |
      static_cast<std::uint32_t>(static_cast<unsigned char>(header[3]));
  if (n > kMaxFrame) {
    throw ParseError("frame", "length " + std::to_string(n) + " exceeds 64 MiB");
  }
  std::string payload(n, '\0');
  in.read(payload.data(), static_cast<std::streamsize>(n));
  if (static_cast<std::uint32_t>(in.gcount()) != n) {
    throw ParseError("frame", "truncated payload");
  }
  return payload;
}

std::string shard_request_json(const ShardRequest& request) {
  const json j = {{"query", query_to_json(request.query)},
                  {"k", request.cfg.k},
                  {"sigma", request.cfg.sigma},
                  {"weighted", request.weighted}};
  return j.dump();
}

ShardRequest parse_shard_request(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    ShardRequest request;
    request.query = query_from_json(j.at("query"));
    request.cfg.k = j.at("k").get<int>();
    request.cfg.sigma = j.at("sigma").get<double>();
    request.weighted = j.at("weighted").get<bool>();
    return request;
  } catch (const json::exception& e) {
    throw ParseError("shard request", e.what());
  }
}

std::string shard_response_json(const ShardResponse& response) {
  json results = json::array();
  for (const auto& r : response.results) results.push_back(result_to_json(r));
  const json j = {{"results", std::move(results)}};
  return j.dump();
}

ShardResponse parse_shard_response(const std::string& json_text) {
  try {
    const json j = json::parse(json_text);
    ShardResponse response;
    for (const auto& r : j.at("results")) {
      response.results.push_back(result_from_json(r));
    }
    return response;
  } catch (const json::exception& e) {
    throw ParseError("shard response", e.what());
  }
}

void serve_shard_stream(const TrieIndex& trie, const DictionaryStats& stats,
                        const CostModel& costs,
                        const ThresholdSchedule& schedule, std::istream& in,
                        std::ostream& out) {
  while (true) {
    in.peek();
    if (in.eof()) return;
    const ShardRequest request = parse_shard_request(read_frame(in));
    const ShardResponse response =
        run_shard_query(trie, stats, request, costs, schedule);
    write_frame(out, shard_response_json(response));
  }
}

}  // namespace textscreen
