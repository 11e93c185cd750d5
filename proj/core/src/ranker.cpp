#include "textscreen/ranker.hpp"

#include <algorithm>
#include <unordered_map>

namespace textscreen {

double similarity(std::string_view query_token, std::string_view record_token,
                  double cost) {
  const auto longer = static_cast<double>(
      std::max(query_token.size(), record_token.size()));
  const double sim = 1.0 - cost / longer;
  return sim < 0.0 ? 0.0 : sim;
}

ScoredResult score_document(const Document& doc, const MatchSet& set,
                            const DictionaryStats& stats, bool weighted) {
  ScoredResult out;
  out.doc_id = doc.id;
  out.raw_name = doc.raw_name;
  out.matches.reserve(set.matches.size());

  // Best similarity-weighted information per matched record token.
  const CostModel unit;
  std::unordered_map<std::string_view, double> best_mi;
  best_mi.reserve(set.matches.size());
  for (const Match& m : set.matches) {
    const double dist =
        weighted ? m.cost
                 : weighted_edit_distance(m.query_token, m.record_token, unit);
    const double sim = similarity(m.query_token, m.record_token, dist);
    out.matches.push_back({m.query_token, m.record_token, m.cost, sim});
    const double mi = sim * stats.information(doc.id, m.record_token);
    auto [it, inserted] = best_mi.emplace(m.record_token, mi);
    if (!inserted && mi > it->second) it->second = mi;
  }

  // Walk the document's distinct tokens in first-occurrence order -- the
  // exact order total_information used -- accumulating matched credit.
  double tmi = 0.0;
  for (std::size_t k = 0; k < doc.tokens.size(); ++k) {
    bool first = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (doc.tokens[j] == doc.tokens[k]) { first = false; break; }
    }
    if (!first) continue;
    const auto it = best_mi.find(doc.tokens[k]);
    if (it != best_mi.end()) tmi += it->second;
  }

  const double tid = stats.total_information(doc.id);
  out.score = 100.0 * (tmi / tid);
  return out;
}

std::vector<ScoredResult> top_k(std::vector<ScoredResult> scored,
                                const FilterConfig& cfg) {
  validate(cfg);
  std::erase_if(scored,
                [&](const ScoredResult& r) { return r.score < cfg.sigma; });
  std::sort(scored.begin(), scored.end(),
            [](const ScoredResult& a, const ScoredResult& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.doc_id < b.doc_id;
            });
  if (scored.size() > static_cast<std::size_t>(cfg.k)) {
    scored.resize(static_cast<std::size_t>(cfg.k));
  }
  return scored;
}

}  // namespace textscreen
