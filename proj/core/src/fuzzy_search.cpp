#include "textscreen/fuzzy_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace textscreen {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-depth DP state for one traversal.  Rows are reused across siblings at
// the same depth; [lo, hi] is the valid column range of the row (banded
// traversals leave the rest stale, so reads outside the range must treat
// the cell as +inf).
struct Row {
  std::vector<double> cells;
  std::size_t lo = 0;
  std::size_t hi = 0;
  double min = kInf;
};

class TrieSearcher {
public:
  TrieSearcher(const TrieIndex& trie, const CostModel& costs,
               const ThresholdSchedule& schedule, CandidateMap& out)
      : trie_(trie), costs_(costs), schedule_(schedule), out_(out) {}

  void run(std::string_view query_token) {
    if (query_token.empty()) {
      throw ConfigError("search_token: empty query token");
    }
    q_ = query_token;
    m_ = q_.size();

    // Horizontal (deletion) steps depend only on query letters.
    duc_step_.assign(m_ + 1, 0.0);
    for (std::size_t j = 1; j <= m_; ++j) {
      duc_step_[j] = costs_.delete_cost(j >= 2 ? q_[j - 2] : '\0', q_[j - 1]);
    }

    // With unit insert/delete costs the distance can never undercut the
    // length difference, so cells with |depth - j| > band can neither be
    // accepted nor lie on a within-budget path: the row collapses to a
    // diagonal band and whole subtrees of unreachable length drop out.
    banded_ = costs_.unit_indel();
    if (banded_) {
      const double widest =
          schedule_.budget_for(std::max(m_, trie_.max_token_length()));
      band_ = static_cast<std::size_t>(std::floor(
          std::min(widest, static_cast<double>(m_ + trie_.max_token_length()))));
      reach_ = static_cast<std::size_t>(
          std::floor(std::min(schedule_.budget_for(m_),
                              static_cast<double>(m_))));
    }

    const std::size_t max_depth = trie_.max_token_length();
    if (rows_.size() < max_depth + 1) rows_.resize(max_depth + 1);
    for (auto& row : rows_) {
      if (row.cells.size() < m_ + 1) row.cells.resize(m_ + 1);
    }

    init_root_row();
    path_.clear();

    // Iterative DFS; recursion depth equals trie depth, which is
    // input-controlled, so no call stack.
    struct Frame {
      std::int32_t node;
      std::int32_t next_child;
    };
    std::vector<Frame> stack;
    stack.push_back({trie_.root(), trie_.node(trie_.root()).first_child});

    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next_child == -1) {
        stack.pop_back();
        if (!path_.empty()) path_.pop_back();
        continue;
      }
      const std::int32_t child_idx = top.next_child;
      const TrieIndex::Node& child = trie_.node(child_idx);
      top.next_child = child.next_sibling;

      const std::size_t depth = stack.size();  // child's depth
      const char prev_letter =
          (stack.size() == 1) ? '\0' : trie_.node(top.node).letter;
      if (!should_enter(child, depth, rows_[depth - 1].min)) continue;

      compute_row(depth, prev_letter, child.letter);
      const Row& row = rows_[depth];

      if (child.postings != -1 && row.lo <= m_ && m_ <= row.hi) {
        const double e = row.cells[m_];
        if (e <= schedule_.budget_for(std::max(m_, depth))) {
          accept(child, e);
        }
      }
      if (child.first_child != -1) {
        stack.push_back({child_idx, child.first_child});
        path_.push_back(child.letter);
      }
    }
  }

private:
  void init_root_row() {
    Row& row = rows_[0];
    row.lo = 0;
    row.hi = banded_ ? std::min(m_, band_) : m_;
    row.cells[0] = 0.0;
    for (std::size_t j = 1; j <= row.hi; ++j) {
      row.cells[j] = row.cells[j - 1] + duc_step_[j];
    }
    row.min = 0.0;
  }

  bool should_enter(const TrieIndex::Node& child, std::size_t depth,
                    double parent_min) const {
    const std::size_t deepest = child.max_eow_depth;
    if (banded_) {
      // Band empty at this depth: every completion is over budget.
      if (depth > m_ + band_) return false;
      // Every end of word below is too short to ever reach the query.
      if (deepest + reach_ < m_) return false;
    }
    return parent_min <= schedule_.budget_for(std::max(m_, deepest));
  }

  void compute_row(std::size_t depth, char prev_letter, char letter) {
    const Row& prev = rows_[depth - 1];
    Row& row = rows_[depth];
    row.lo = banded_ ? (depth > band_ ? depth - band_ : 0) : 0;
    row.hi = banded_ ? std::min(m_, depth + band_) : m_;

    const auto above = [&](std::size_t j) -> double {
      return (j >= prev.lo && j <= prev.hi) ? prev.cells[j] : kInf;
    };

    const double iuc = costs_.insert_cost(prev_letter, letter);
    double row_min = kInf;
    for (std::size_t j = row.lo; j <= row.hi; ++j) {
      double best = above(j) + iuc;
      if (j > row.lo) {
        const double del = row.cells[j - 1] + duc_step_[j];
        if (del < best) best = del;
      }
      if (j >= 1) {
        const double sub =
            above(j - 1) + costs_.substitute_cost(q_[j - 1], letter);
        if (sub < best) best = sub;
      }
      row.cells[j] = best;
      if (best < row_min) row_min = best;
    }
    row.min = row_min;
  }

  void accept(const TrieIndex::Node& eow, double cost) {
    // path_ holds the letters above the accepted node; append its own.
    std::string token(path_.begin(), path_.end());
    token.push_back(eow.letter);
    for (const DocId id : trie_.postings_at(eow.postings)) {
      MatchSet& set = out_[id];
      set.doc_id = id;
      bool found = false;
      for (Match& existing : set.matches) {
        if (existing.record_token == token) {
          if (cost < existing.cost) {
            existing.query_token = std::string(q_);
            existing.cost = cost;
          }
          found = true;
          break;
        }
      }
      if (!found) {
        set.matches.push_back({std::string(q_), token, cost});
      }
    }
  }

  const TrieIndex& trie_;
  const CostModel& costs_;
  const ThresholdSchedule& schedule_;
  CandidateMap& out_;

  std::string_view q_;
  std::size_t m_ = 0;
  std::vector<double> duc_step_;
  bool banded_ = false;
  std::size_t band_ = 0;
  std::size_t reach_ = 0;
  std::vector<Row> rows_;
  std::vector<char> path_;
};

}  // namespace

double weighted_edit_distance(std::string_view query, std::string_view record,
                              const CostModel& costs) {
  const std::size_t m = query.size();
  const std::size_t n = record.size();
  std::vector<double> prev(m + 1), cur(m + 1);

  prev[0] = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    prev[j] = prev[j - 1] +
              costs.delete_cost(j >= 2 ? query[j - 2] : '\0', query[j - 1]);
  }
  for (std::size_t l = 1; l <= n; ++l) {
    const char d = record[l - 1];
    const char prev_d = l >= 2 ? record[l - 2] : '\0';
    const double iuc = costs.insert_cost(prev_d, d);
    cur[0] = prev[0] + iuc;
    for (std::size_t j = 1; j <= m; ++j) {
      const double del =
          cur[j - 1] +
          costs.delete_cost(j >= 2 ? query[j - 2] : '\0', query[j - 1]);
      const double ins = prev[j] + iuc;
      const double sub = prev[j - 1] + costs.substitute_cost(query[j - 1], d);
      cur[j] = std::min({ins, del, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

void search_token(const TrieIndex& trie, std::string_view query_token,
                  const CostModel& costs, const ThresholdSchedule& schedule,
                  CandidateMap& out) {
  TrieSearcher searcher(trie, costs, schedule, out);
  searcher.run(query_token);
}

CandidateMap search_query(const TrieIndex& trie, const ExpandedQuery& query,
                          const CostModel& costs,
                          const ThresholdSchedule& schedule) {
  CandidateMap out;
  for (const auto& token : query.base) {
    search_token(trie, token, costs, schedule, out);
  }
  for (const auto& window : query.windows) {
    search_token(trie, window.token, costs, schedule, out);
  }
  return out;
}

}  // namespace textscreen
