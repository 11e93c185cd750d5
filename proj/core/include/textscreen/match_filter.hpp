#pragma once

#include <cstddef>

#include "textscreen/fuzzy_search.hpp"
#include "textscreen/trie_index.hpp"
#include "textscreen/types.hpp"

namespace textscreen {

// Shared result-shaping knobs: k is both the result-list cap and the
// discrimination bound used by filtering; sigma is the minimum score kept.
struct FilterConfig {
  int k = 20;
  double sigma = 60.0;
};

// Throws ConfigError unless k >= 1 and sigma in [0, 100].
void validate(const FilterConfig& cfg);

// Number of documents containing EVERY distinct record token of the match
// set: the intersection of their posting lists.  Throws std::logic_error if
// the source lacks a matched token (the source must cover the dictionary
// the matches came from).
std::size_t support(const PostingSource& postings, const MatchSet& set);

// Drops candidates that cannot be discriminating:
//
//   - single distinct matched record token occurring in more than k
//     documents (it would fill the whole result list by itself), and
//   - any match-token combination shared by more than k documents.
//
// Exactly-k stays in: the boundary favours recall.  For a single-token set
// support equals document frequency, so the first rule is the one-token
// case of the second; both are checked through the intersection.
CandidateMap filter_matches(CandidateMap candidates,
                            const PostingSource& postings,
                            const FilterConfig& cfg);

}  // namespace textscreen
