#include "textscreen/cost_model.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace textscreen {

CostModel::CostModel() {
  iuc_.fill(1.0);
  duc_.fill(1.0);
  suc_.fill(1.0);
}

void CostModel::validate_pair(char a, char b, double cost,
                              const char* op) const {
  if (!is_token_char(a) || !is_token_char(b)) {
    throw ConfigError(std::string("cost ") + op +
                      ": characters must be in [a-z0-9]");
  }
  if (!(cost >= 0.0 && cost <= 1.0)) {
    throw ConfigError(std::string("cost ") + op + ": cost " +
                      std::to_string(cost) + " outside [0,1]");
  }
}

void CostModel::set_insert_cost(char prev, char cur, double cost) {
  validate_pair(prev, cur, cost, "I");
  iuc_[slot(prev, cur)] = cost;
  if (cost != 1.0) unit_indel_ = false, unit_ = false;
}

void CostModel::set_delete_cost(char prev, char cur, double cost) {
  validate_pair(prev, cur, cost, "D");
  duc_[slot(prev, cur)] = cost;
  if (cost != 1.0) unit_indel_ = false, unit_ = false;
}

void CostModel::set_substitute_cost(char q, char d, double cost) {
  validate_pair(q, d, cost, "S");
  if (q == d) {
    throw ConfigError("cost S: equal letters always cost 0");
  }
  suc_[slot(q, d)] = cost;
  if (cost != 1.0) unit_ = false;
}

CostModel CostModel::load(std::istream& in, std::string_view source) {
  CostModel model;
  std::string line;
  std::size_t lineno = 0;
  const auto where = [&] {
    return std::string(source) + ":" + std::to_string(lineno);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> cols;
    std::size_t pos = 0;
    while (true) {
      const std::size_t tab = line.find('\t', pos);
      cols.push_back(line.substr(pos, tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (cols.size() != 4) {
      throw ParseError(where(), "expected 4 tab-separated columns, got " +
                                    std::to_string(cols.size()));
    }
    if (cols[0].size() != 1 || cols[1].size() != 1 || cols[2].size() != 1) {
      throw ParseError(where(), "op and characters must be single characters");
    }
    double cost = 0.0;
    const auto [ptr, ec] = std::from_chars(
        cols[3].data(), cols[3].data() + cols[3].size(), cost);
    if (ec != std::errc{} || ptr != cols[3].data() + cols[3].size()) {
      throw ParseError(where(), "bad cost value '" + cols[3] + "'");
    }
    try {
      switch (cols[0][0]) {
        case 'I': model.set_insert_cost(cols[1][0], cols[2][0], cost); break;
        case 'D': model.set_delete_cost(cols[1][0], cols[2][0], cost); break;
        case 'S': model.set_substitute_cost(cols[1][0], cols[2][0], cost); break;
        default:
          throw ConfigError("unknown op '" + cols[0] + "' (expected I, D, S)");
      }
    } catch (const ConfigError& e) {
      throw ParseError(where(), e.what());
    }
  }
  return model;
}

CostModel CostModel::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open cost file");
  return load(in, path);
}

ThresholdSchedule ThresholdSchedule::parse(std::string_view text) {
  std::vector<Band> bands;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view part = text.substr(pos, comma - pos);
    const std::size_t colon = part.find(':');
    if (part.empty() || colon == std::string_view::npos) {
      throw ParseError("thresholds",
                       "expected maxlen:budget, got '" + std::string(part) + "'");
    }
    std::size_t max_len = 0;
    auto [p1, e1] =
        std::from_chars(part.data(), part.data() + colon, max_len);
    if (e1 != std::errc{} || p1 != part.data() + colon || max_len == 0) {
      throw ParseError("thresholds",
                       "bad length in '" + std::string(part) + "'");
    }
    double budget = 0.0;
    auto [p2, e2] = std::from_chars(part.data() + colon + 1,
                                    part.data() + part.size(), budget);
    if (e2 != std::errc{} || p2 != part.data() + part.size() || budget < 0.0) {
      throw ParseError("thresholds",
                       "bad budget in '" + std::string(part) + "'");
    }
    if (!bands.empty()) {
      if (max_len <= bands.back().max_len) {
        throw ParseError("thresholds", "lengths must be strictly increasing");
      }
      if (budget < bands.back().budget) {
        throw ParseError("thresholds", "budgets must be non-decreasing");
      }
    }
    bands.push_back({max_len, budget});
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (bands.empty()) throw ParseError("thresholds", "empty schedule");
  return ThresholdSchedule(std::move(bands));
}

ThresholdSchedule ThresholdSchedule::defaults() {
  return parse("3:0,6:1,10:2,999:3");
}

double ThresholdSchedule::budget_for(std::size_t len) const noexcept {
  for (const auto& band : bands_) {
    if (len <= band.max_len) return band.budget;
  }
  return bands_.back().budget;
}

std::string ThresholdSchedule::to_string() const {
  std::string out;
  for (const auto& band : bands_) {
    if (!out.empty()) out += ',';
    out += std::to_string(band.max_len);
    out += ':';
    std::ostringstream b;
    b << band.budget;
    out += b.str();
  }
  return out;
}

}  // namespace textscreen
