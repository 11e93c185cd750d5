#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "textscreen/fuzzy_search.hpp"
#include "textscreen/match_filter.hpp"
#include "textscreen/trie_index.hpp"
#include "textscreen/types.hpp"

namespace textscreen {

struct ScoredMatch {
  std::string query_token;
  std::string record_token;
  double cost = 0.0;
  double similarity = 0.0;
};

struct ScoredResult {
  DocId doc_id = 0;
  std::string raw_name;
  double score = 0.0;
  std::vector<ScoredMatch> matches;
};

// 1 - cost / max(|q|, |d|), clamped at 0.  Cost 0 gives exactly 1.
double similarity(std::string_view query_token, std::string_view record_token,
                  double cost);

// Percentage of the document's information mass the query recovered:
//
//   score = 100 * TMI / TID
//
// where TID is the document's total information (sum of tf*idf over its
// distinct tokens) and TMI credits each matched distinct token with its best
// similarity-weighted information, sim * tf * idf.  Both sums run over the
// document's tokens in first-occurrence order, so matching every token at
// similarity 1 yields exactly 100.
//
// `weighted` selects which distance feeds the similarity: the match's own
// cost (true), or a plain unit-cost edit distance recomputed per pair
// (false).  With an all-unit cost model the two coincide on every input.
ScoredResult score_document(const Document& doc, const MatchSet& set,
                            const DictionaryStats& stats, bool weighted);

// Keeps results scoring at least cfg.sigma, orders by descending score with
// ascending doc id breaking ties, and truncates to cfg.k.
std::vector<ScoredResult> top_k(std::vector<ScoredResult> scored,
                                const FilterConfig& cfg);

}  // namespace textscreen
