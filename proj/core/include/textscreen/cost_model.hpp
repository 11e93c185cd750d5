#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "textscreen/normalize.hpp"
#include "textscreen/types.hpp"

namespace textscreen {

// ---------------------------------------------------------------------------
// CostModel
//
// Context-sensitive unit costs for the weighted edit distance, each in
// [0, 1]:
//
//   insert_cost(prev, cur)      cost of inserting dictionary letter `cur`
//                               after dictionary letter `prev`
//   delete_cost(prev, cur)      cost of deleting query letter `cur` after
//                               query letter `prev`
//   substitute_cost(q, d)       cost of aligning query letter `q` with
//                               dictionary letter `d`; exactly 0 when q == d
//
// `prev` is '\0' at the start of a token.  Any pair touching '\0' or a
// character outside [a-z0-9] keeps cost 1 and cannot be customised: the
// discount tables exist for in-alphabet confusions (keyboard slips,
// transliteration drift), not for boundaries.
// ---------------------------------------------------------------------------

class CostModel {
public:
  // All unit costs: the distance degenerates to classic Levenshtein.
  CostModel();

  static CostModel unit() { return CostModel{}; }

  // Loads `op<TAB>a<TAB>b<TAB>cost` lines (op in {I,D,S}, `a`/`b` single
  // characters in [a-z0-9], cost in [0,1]).  Blank lines and lines starting
  // with '#' are skipped.  Later lines override earlier ones.  Throws
  // ParseError on malformed input.
  static CostModel load(std::istream& in, std::string_view source = "<stream>");
  static CostModel load_file(const std::string& path);

  // Setters validate domain: both characters in [a-z0-9], cost in [0,1].
  // substitute_cost with q == d is rejected: equal letters always cost 0.
  void set_insert_cost(char prev, char cur, double cost);
  void set_delete_cost(char prev, char cur, double cost);
  void set_substitute_cost(char q, char d, double cost);

  double insert_cost(char prev, char cur) const noexcept {
    return iuc_[slot(prev, cur)];
  }
  double delete_cost(char prev, char cur) const noexcept {
    return duc_[slot(prev, cur)];
  }
  double substitute_cost(char q, char d) const noexcept {
    if (q == d && is_token_char(q)) return 0.0;
    return suc_[slot(q, d)];
  }

  // True while every insert and delete cost is exactly 1.  This is the
  // precondition for the banded traversal (trie_search): with unit
  // insert/delete the distance can never undercut |length difference|.
  bool unit_indel() const noexcept { return unit_indel_; }

  // True while nothing was customised at all (classic Levenshtein).
  bool is_unit() const noexcept { return unit_; }

private:
  static std::size_t slot(char a, char b) noexcept {
    const int ia = (a == '\0') ? kOtherIdx : letter_index(a);
    const int ib = (b == '\0') ? kOtherIdx : letter_index(b);
    return static_cast<std::size_t>(ia) * kCostDim +
           static_cast<std::size_t>(ib);
  }

  void validate_pair(char a, char b, double cost, const char* op) const;

  std::array<double, kCostDim * kCostDim> iuc_;
  std::array<double, kCostDim * kCostDim> duc_;
  std::array<double, kCostDim * kCostDim> suc_;
  bool unit_indel_ = true;
  bool unit_ = true;
};

// ---------------------------------------------------------------------------
// ThresholdSchedule
//
// Maps token length to the edit budget allowed for that length, e.g.
// "3:0,6:1,10:2,999:3": lengths <=3 must match exactly, <=6 allow distance
// 1, and so on.  Budgets are non-decreasing in length; lengths beyond the
// last band reuse its budget.
// ---------------------------------------------------------------------------

class ThresholdSchedule {
public:
  struct Band {
    std::size_t max_len;
    double budget;
  };

  // Parses "maxlen:budget,maxlen:budget,...".  Bands must have strictly
  // increasing max_len and non-decreasing budget; budgets must be >= 0.
  static ThresholdSchedule parse(std::string_view text);

  // "3:0,6:1,10:2,999:3"
  static ThresholdSchedule defaults();

  double budget_for(std::size_t len) const noexcept;
  double max_budget() const noexcept { return bands_.back().budget; }
  const std::vector<Band>& bands() const noexcept { return bands_; }
  std::string to_string() const;

private:
  explicit ThresholdSchedule(std::vector<Band> bands)
      : bands_(std::move(bands)) {}

  std::vector<Band> bands_;
};

}  // namespace textscreen
