#include "textscreen/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <string>

namespace textscreen {
namespace {

// All randomness flows through bounded draws on mt19937_64 output rather
// than std::uniform_int_distribution, whose mapping is implementation
// defined; corpora must be identical for one seed everywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::size_t below(std::size_t n) { return n == 0 ? 0 : gen_() % n; }

  std::size_t between(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + below(hi - lo + 1);
  }

  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    constexpr double kScale = 9007199254740992.0;  // 2^53
    return static_cast<double>(gen_() >> 11) < p * kScale;
  }

private:
  std::mt19937_64 gen_;
};

constexpr const char* kSyllables[] = {
    "ba", "be", "bi", "bo", "bu", "da", "de", "di", "do", "du", "ka", "ke",
    "ki", "ko", "ku", "la", "le", "li", "lo", "lu", "ma", "me", "mi", "mo",
    "mu", "na", "ne", "ni", "no", "nu", "ra", "re", "ri", "ro", "ru", "sa",
    "se", "si", "so", "su", "ta", "te", "ti", "to", "tu", "van", "ber", "kin",
    "mir", "dur", "gan", "han", "jan", "kan", "lan", "man", "par", "sen",
    "tan", "yan", "zar", "din", "gul", "nov", "ovi", "ski", "shi", "chi",
    "ash", "ish"};
constexpr std::size_t kSyllableCount = std::size(kSyllables);

std::string make_token(Rng& rng) {
  const std::size_t n_syllables = rng.between(2, 4);
  std::string token;
  for (std::size_t i = 0; i < n_syllables; ++i) {
    token += kSyllables[rng.below(kSyllableCount)];
  }
  if (token.size() > 12) token.resize(12);
  return token;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(c));
  return s;
}

char random_letter(Rng& rng) {
  return static_cast<char>('a' + rng.below(26));
}

// Applies exactly n_edits single-character edits; the result stays within
// Levenshtein distance n_edits of the input.
std::string inject_typos(std::string token, std::size_t n_edits, Rng& rng) {
  for (std::size_t i = 0; i < n_edits; ++i) {
    const std::size_t op = rng.below(3);
    if (op == 0 && !token.empty()) {  // substitute
      const std::size_t pos = rng.below(token.size());
      char c = random_letter(rng);
      while (c == token[pos]) c = random_letter(rng);
      token[pos] = c;
    } else if (op == 1) {  // insert
      const std::size_t pos = rng.below(token.size() + 1);
      token.insert(token.begin() + static_cast<std::ptrdiff_t>(pos),
                   random_letter(rng));
    } else if (token.size() > 1) {  // delete, never below one character
      const std::size_t pos = rng.below(token.size());
      token.erase(token.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {  // fall back to substitution on one-character tokens
      char c = random_letter(rng);
      while (c == token[0]) c = random_letter(rng);
      token[0] = c;
    }
  }
  return token;
}

}  // namespace

SynthCorpus synth_corpus(const SynthConfig& cfg) {
  if (cfg.n_docs == 0) throw ConfigError("synth: n_docs must be >= 1");
  if (cfg.min_name_tokens < 1 || cfg.max_name_tokens < cfg.min_name_tokens) {
    throw ConfigError("synth: bad name token bounds");
  }
  if (!(cfg.typo_rate >= 0.0 && cfg.typo_rate <= 1.0)) {
    throw ConfigError("synth: typo_rate must be in [0, 1]");
  }

  Rng rng(cfg.seed);
  SynthCorpus corpus;
  corpus.documents.reserve(cfg.n_docs);
  for (std::size_t i = 0; i < cfg.n_docs; ++i) {
    const std::size_t n_tokens =
        rng.between(cfg.min_name_tokens, cfg.max_name_tokens);
    std::string name;
    for (std::size_t t = 0; t < n_tokens; ++t) {
      if (!name.empty()) name += ' ';
      name += upper(make_token(rng));
    }
    corpus.documents.push_back(
        make_document(static_cast<DocId>(i + 1), std::move(name)));
  }

  const std::size_t n_queries =
      cfg.n_queries > 0 ? cfg.n_queries : std::min<std::size_t>(cfg.n_docs, 1000);
  const auto n_negative = static_cast<std::size_t>(
      std::floor(static_cast<double>(n_queries) * cfg.negative_fraction));

  corpus.queries.reserve(n_queries);
  for (std::size_t qi = 0; qi < n_queries; ++qi) {
    const bool negative = qi < n_negative;
    LabeledQuery lq;

    std::vector<std::string> parts;
    const std::size_t lead = rng.below(cfg.max_distractors + 1);
    for (std::size_t i = 0; i < lead; ++i) parts.push_back(make_token(rng));

    if (!negative) {
      const Document& doc = corpus.documents[rng.below(cfg.n_docs)];
      for (const std::string& token : doc.tokens) {
        std::size_t n_edits = 0;
        if (rng.chance(cfg.typo_rate)) {
          // Bounded by the budget for the ORIGINAL length; the schedule is
          // non-decreasing in length, so the edited pair stays in budget.
          const auto budget = static_cast<std::size_t>(
              std::floor(cfg.schedule.budget_for(token.size())));
          const std::size_t cap = std::min(budget, token.size() - 1);
          if (cap > 0) n_edits = rng.between(1, cap);
        }
        parts.push_back(inject_typos(token, n_edits, rng));
      }
      lq.expected.push_back(doc.id);
    }

    const std::size_t tail = rng.below(cfg.max_distractors + 1);
    for (std::size_t i = 0; i < tail; ++i) parts.push_back(make_token(rng));
    if (parts.empty()) parts.push_back(make_token(rng));

    for (const auto& p : parts) {
      if (!lq.query_text.empty()) lq.query_text += ' ';
      lq.query_text += p;
    }
    corpus.queries.push_back(std::move(lq));
  }
  return corpus;
}

}  // namespace textscreen
