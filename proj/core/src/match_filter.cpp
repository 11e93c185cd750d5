#include "textscreen/match_filter.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace textscreen {

void validate(const FilterConfig& cfg) {
  if (cfg.k < 1) {
    throw ConfigError("k must be >= 1, got " + std::to_string(cfg.k));
  }
  if (!(cfg.sigma >= 0.0 && cfg.sigma <= 100.0)) {
    throw ConfigError("sigma must be in [0, 100], got " +
                      std::to_string(cfg.sigma));
  }
}

namespace {

std::vector<const std::string*> distinct_record_tokens(const MatchSet& set) {
  std::vector<const std::string*> tokens;
  tokens.reserve(set.matches.size());
  for (const Match& m : set.matches) {
    const bool seen = std::any_of(
        tokens.begin(), tokens.end(),
        [&](const std::string* t) { return *t == m.record_token; });
    if (!seen) tokens.push_back(&m.record_token);
  }
  return tokens;
}

}  // namespace

std::size_t support(const PostingSource& postings, const MatchSet& set) {
  const auto tokens = distinct_record_tokens(set);
  if (tokens.empty()) return 0;

  std::vector<const std::vector<DocId>*> lists;
  lists.reserve(tokens.size());
  for (const std::string* t : tokens) {
    const std::vector<DocId>* list = postings.find_postings(*t);
    if (list == nullptr) {
      throw std::logic_error("posting source lacks matched record token '" +
                             *t + "'");
    }
    lists.push_back(list);
  }
  if (lists.size() == 1) return lists.front()->size();

  // Intersect smallest-first; the intersection only shrinks.
  std::sort(lists.begin(), lists.end(),
            [](const auto* a, const auto* b) { return a->size() < b->size(); });
  std::vector<DocId> acc(*lists.front());
  std::vector<DocId> next;
  for (std::size_t i = 1; i < lists.size() && !acc.empty(); ++i) {
    next.clear();
    std::set_intersection(acc.begin(), acc.end(), lists[i]->begin(),
                          lists[i]->end(), std::back_inserter(next));
    acc.swap(next);
  }
  return acc.size();
}

CandidateMap filter_matches(CandidateMap candidates,
                            const PostingSource& postings,
                            const FilterConfig& cfg) {
  validate(cfg);
  const auto bound = static_cast<std::size_t>(cfg.k);
  for (auto it = candidates.begin(); it != candidates.end();) {
    if (support(postings, it->second) > bound) {
      it = candidates.erase(it);
    } else {
      ++it;
    }
  }
  return candidates;
}

}  // namespace textscreen
