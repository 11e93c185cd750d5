#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "textscreen/cost_model.hpp"
#include "textscreen/normalize.hpp"
#include "textscreen/trie_index.hpp"
#include "textscreen/types.hpp"

namespace textscreen {

// One surviving (query token, record token) alignment.
struct Match {
  std::string query_token;
  std::string record_token;
  double cost = 0.0;
};

// Every match a single document collected across one query.
struct MatchSet {
  DocId doc_id = 0;
  std::vector<Match> matches;
};

using CandidateMap = std::unordered_map<DocId, MatchSet>;

// Full-matrix weighted edit distance between one query token and one record
// token.  Alignment model:
//
//   insert   record letter `cur` after record letter `prev`:
//              insert_cost(prev, cur)
//   delete   query letter `cur` after query letter `prev`:
//              delete_cost(prev, cur)
//   align    query letter q with record letter d: 0 if equal, else
//              substitute_cost(q, d)
//
// `prev` is '\0' at a token start.  The trie traversal computes exactly
// these values row by row, so the two agree bit for bit.
double weighted_edit_distance(std::string_view query, std::string_view record,
                              const CostModel& costs);

// Walks the trie with one DP row per depth.  A record token of length l is
// accepted for query token q of length m when its distance is within
// budget_for(max(m, l)); every document on the accepted node's posting list
// gains a match.  Subtrees are abandoned once the row minimum exceeds the
// largest budget any end-of-word below could be granted, which preserves
// every within-budget match by construction.
//
// Matches accumulate into `out` with min-cost retention: one match per
// (document, record token), keeping the cheapest (first seen on ties).
// `query_token` must be non-empty.
void search_token(const TrieIndex& trie, std::string_view query_token,
                  const CostModel& costs, const ThresholdSchedule& schedule,
                  CandidateMap& out);

// search_token over every base token, then every window token, sharing one
// accumulator so min-cost retention applies across the whole query.
CandidateMap search_query(const TrieIndex& trie, const ExpandedQuery& query,
                          const CostModel& costs,
                          const ThresholdSchedule& schedule);

}  // namespace textscreen
