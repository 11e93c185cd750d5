#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "textscreen/cost_model.hpp"
#include "textscreen/eval.hpp"
#include "textscreen/trie_index.hpp"

namespace textscreen {

// Deterministic name-like corpus generator: stand-in for proprietary
// screening datasets.  Every positive query embeds one record's tokens (in
// order, possibly typo-squashed) among distractor tokens; per-token edit
// counts never exceed the schedule's budget for the token's original
// length, so a budget-respecting search engine must recall every positive.
struct SynthConfig {
  std::size_t n_docs = 1000;
  double typo_rate = 0.3;  // chance each embedded token gets edited
  std::uint64_t seed = 1;
  std::size_t n_queries = 0;         // 0 = min(n_docs, 1000)
  double negative_fraction = 0.1;    // of n_queries, get no embedded record
  std::size_t min_name_tokens = 2;
  std::size_t max_name_tokens = 4;
  std::size_t max_distractors = 3;   // distractor tokens around the embed
  ThresholdSchedule schedule = ThresholdSchedule::defaults();
};

struct SynthCorpus {
  std::vector<Document> documents;
  std::vector<LabeledQuery> queries;
};

SynthCorpus synth_corpus(const SynthConfig& cfg);

inline SynthCorpus synth_corpus(std::size_t n_docs, double typo_rate,
                                std::uint64_t seed) {
  SynthConfig cfg;
  cfg.n_docs = n_docs;
  cfg.typo_rate = typo_rate;
  cfg.seed = seed;
  return synth_corpus(cfg);
}

}  // namespace textscreen
