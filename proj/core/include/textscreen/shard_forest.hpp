#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "textscreen/cost_model.hpp"
#include "textscreen/fuzzy_search.hpp"
#include "textscreen/match_filter.hpp"
#include "textscreen/normalize.hpp"
#include "textscreen/ranker.hpp"
#include "textscreen/trie_index.hpp"
#include "textscreen/types.hpp"

namespace textscreen {

// Which shard each document's tokens are indexed on.  Shards partition the
// trie only; statistics and posting lists stay corpus-global so scores and
// filtering are independent of the partitioning.
struct ShardPlan {
  std::size_t n_shards = 1;
  std::vector<std::size_t> shard_by_position;  // parallel to document order

  // Document at position i goes to shard i % n_shards.
  static ShardPlan round_robin(std::size_t n_docs, std::size_t n_shards);
};

class Forest {
public:
  // Throws ConfigError when n_shards < 1 or docs are invalid.
  static Forest build(std::vector<Document> docs, std::size_t n_shards);

  std::size_t shard_count() const noexcept { return tries_.size(); }
  const TrieIndex& shard(std::size_t i) const { return tries_.at(i); }
  const DictionaryStats& stats() const noexcept { return stats_; }
  const ShardPlan& plan() const noexcept { return plan_; }

  std::size_t node_count() const noexcept;  // summed over shards

private:
  DictionaryStats stats_;
  std::vector<TrieIndex> tries_;
  ShardPlan plan_;
};

// One shard's half of the scatter/gather exchange.  Cost model and
// threshold schedule are deployment configuration every shard holds; only
// per-query data travels.
struct ShardRequest {
  ExpandedQuery query;
  FilterConfig cfg;
  bool weighted = false;
};

struct ShardResponse {
  std::vector<ScoredResult> results;
};

// The per-shard pipeline stage: search the shard's trie, filter against the
// global posting lists, score against the global statistics, cut to the
// local top k.  The coordinator merges these per-shard lists.
ShardResponse run_shard_query(const TrieIndex& trie,
                              const DictionaryStats& stats,
                              const ShardRequest& request,
                              const CostModel& costs,
                              const ThresholdSchedule& schedule);

// Scatter/gather over all shards, then merge: order by descending score,
// ascending doc id, truncate to cfg.k.  Results are identical to a
// single-shard index over the same documents, byte for byte, because every
// per-document quantity is computed from global state and the merge order
// is total.
std::vector<ScoredResult> search_forest(const Forest& forest,
                                        const ExpandedQuery& query,
                                        const CostModel& costs,
                                        const ThresholdSchedule& schedule,
                                        const FilterConfig& cfg,
                                        bool weighted = false);

// ---------------------------------------------------------------------------
// Wire format for running shards as separate processes: length-prefixed
// JSON frames (32-bit big-endian byte count, then the UTF-8 payload) over
// any byte stream.  Frames above 64 MiB are rejected.
// ---------------------------------------------------------------------------

void write_frame(std::ostream& out, std::string_view payload);
std::string read_frame(std::istream& in);  // ParseError on truncation/oversize

std::string shard_request_json(const ShardRequest& request);
ShardRequest parse_shard_request(const std::string& json_text);

std::string shard_response_json(const ShardResponse& response);
ShardResponse parse_shard_response(const std::string& json_text);

// Serves shard requests from `in` until EOF, answering on `out`.  One
// worker process runs this against its shard's trie.
void serve_shard_stream(const TrieIndex& trie, const DictionaryStats& stats,
                        const CostModel& costs,
                        const ThresholdSchedule& schedule, std::istream& in,
                        std::ostream& out);

}  // namespace textscreen
