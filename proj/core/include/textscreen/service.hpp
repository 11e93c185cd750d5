#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "textscreen/cost_model.hpp"
#include "textscreen/ingest.hpp"
#include "textscreen/match_filter.hpp"
#include "textscreen/shard_forest.hpp"
#include "textscreen/types.hpp"

namespace textscreen {

enum class QueryFormat { kText, kMt };

// Full pipeline configuration fixed at index-build time.
struct PipelineOptions {
  FilterConfig filter;
  std::size_t window_limit = kDefaultWindowLimit;
  ThresholdSchedule schedule = ThresholdSchedule::defaults();
  CostModel costs;
  std::size_t n_shards = 1;
  // unset = automatic: weighted scoring iff a non-trivial cost model is
  // loaded.  Plain Levenshtein similarity otherwise.
  std::optional<bool> weighted;
};

// Per-request knobs; anything unset falls back to PipelineOptions.
struct ScreenOverrides {
  std::optional<int> k;
  std::optional<double> sigma;
  std::optional<bool> weighted;
};

struct ScreenOutcome {
  std::string query;  // the text actually screened
  std::vector<ScoredResult> results;
  double latency_ms = 0.0;
};

struct IndexSummary {
  std::size_t docs = 0;
  std::size_t distinct_tokens = 0;
  std::size_t trie_nodes = 0;
  std::size_t shards = 1;
  double build_ms = 0.0;
};

// Immutable after construction; safe to share across request threads.
class Screener {
public:
  Screener(std::vector<Document> docs, PipelineOptions opts);

  ScreenOutcome screen_text(std::string_view text,
                            const ScreenOverrides& overrides = {}) const;
  // parse_mt + screenable field extraction; the extracted text (fields
  // joined with single spaces) becomes the query.  MtParseError propagates.
  ScreenOutcome screen_mt(std::string_view raw_message,
                          const ScreenOverrides& overrides = {}) const;
  ScreenOutcome screen(std::string_view payload, QueryFormat format,
                       const ScreenOverrides& overrides = {}) const;

  const Forest& forest() const noexcept { return forest_; }
  const PipelineOptions& options() const noexcept { return opts_; }
  const IndexSummary& summary() const noexcept { return summary_; }
  bool weighted_scoring(const ScreenOverrides& overrides) const;

private:
  PipelineOptions opts_;
  Forest forest_;
  IndexSummary summary_;
};

// `{query, results: [{doc_id, name, score, matches: [{q, d, cost, sim}]}]}`
// with scores rounded to 4 decimals.  Deterministic byte-for-byte for a
// given outcome; the CLI and the HTTP endpoint both emit exactly this.
std::string result_json(const ScreenOutcome& outcome);

// Transport-independent request handling; an HTTP (or any other) frontend
// maps these replies onto its wire.  Replies carry the measured in-service
// latency so transports can surface it in metadata without touching the
// body.
struct ServiceReply {
  int status = 200;  // 200 | 400 | 503
  std::string body;
  double latency_ms = 0.0;
};

class ScreenService {
public:
  ScreenService() = default;  // not ready until a screener is installed
  explicit ScreenService(std::shared_ptr<const Screener> screener);

  // Atomic swap; in-flight requests finish on the old index.
  void install(std::shared_ptr<const Screener> screener);
  bool ready() const;

  // Request body: {"text": string, "format": "text"|"mt",
  //                "k": int, "sigma": number, "weighted": bool}
  // with only "text" required.  400 on malformed input, 503 before ready.
  ServiceReply handle_screen(std::string_view request_body) const;
  ServiceReply handle_health() const;

private:
  std::shared_ptr<const Screener> current() const;

  mutable std::mutex mu_;
  std::shared_ptr<const Screener> screener_;
};

// Binds and serves until the process is signalled; returns a nonzero exit
// code if the port cannot be bound.  POST /screen, GET /health; the
// measured latency is exposed as the X-Latency-Ms response header.
int run_http_server(ScreenService& service, const std::string& host, int port);

}  // namespace textscreen
