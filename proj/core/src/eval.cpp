#include "textscreen/eval.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

namespace textscreen {

double f_beta_score(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

namespace {

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

Counts count_query(const std::vector<DocId>& retrieved,
                   const std::vector<DocId>& expected) {
  std::vector<DocId> ret(retrieved);
  std::vector<DocId> exp(expected);
  std::sort(ret.begin(), ret.end());
  ret.erase(std::unique(ret.begin(), ret.end()), ret.end());
  std::sort(exp.begin(), exp.end());
  exp.erase(std::unique(exp.begin(), exp.end()), exp.end());

  Counts c;
  for (const DocId id : ret) {
    if (std::binary_search(exp.begin(), exp.end(), id)) {
      ++c.tp;
    } else {
      ++c.fp;
    }
  }
  c.fn = exp.size() - c.tp;
  return c;
}

double guarded_precision(const Counts& c) {
  if (c.tp + c.fp == 0) return c.fn == 0 ? 1.0 : 0.0;
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
}

double guarded_recall(const Counts& c) {
  if (c.tp + c.fn == 0) return c.fp == 0 ? 1.0 : 0.0;
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

}  // namespace

EvalMetrics evaluate(const std::vector<std::vector<DocId>>& retrieved,
                     const std::vector<LabeledQuery>& labels, double beta) {
  if (retrieved.size() != labels.size()) {
    throw ConfigError("evaluate: " + std::to_string(retrieved.size()) +
                      " result lists for " + std::to_string(labels.size()) +
                      " labels");
  }
  if (beta <= 0.0) throw ConfigError("beta must be > 0");

  EvalMetrics m;
  m.n_queries = labels.size();
  m.beta = beta;

  Counts total;
  double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Counts c = count_query(retrieved[i], labels[i].expected);
    total.tp += c.tp;
    total.fp += c.fp;
    total.fn += c.fn;
    const double p = guarded_precision(c);
    const double r = guarded_recall(c);
    sum_p += p;
    sum_r += r;
    sum_f += f_beta_score(p, r, beta);
  }

  m.tp = total.tp;
  m.fp = total.fp;
  m.fn = total.fn;
  m.precision = guarded_precision(total);
  m.recall = guarded_recall(total);
  m.f_beta = f_beta_score(m.precision, m.recall, beta);
  if (!labels.empty()) {
    const auto n = static_cast<double>(labels.size());
    m.macro_precision = sum_p / n;
    m.macro_recall = sum_r / n;
    m.macro_f_beta = sum_f / n;
  }
  return m;
}

std::vector<LabeledQuery> load_labels(std::istream& in,
                                      std::string_view source) {
  std::vector<LabeledQuery> labels;
  std::string line;
  std::size_t lineno = 0;
  const auto where = [&] {
    return std::string(source) + ":" + std::to_string(lineno);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(where(), "expected query_text<TAB>doc_id[,doc_id...]");
    }
    LabeledQuery lq;
    lq.query_text = line.substr(0, tab);
    if (lq.query_text.empty()) {
      throw ParseError(where(), "empty query text");
    }
    std::size_t pos = tab + 1;
    while (pos < line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      DocId id = 0;
      const auto [ptr, ec] =
          std::from_chars(line.data() + pos, line.data() + comma, id);
      if (ec != std::errc{} || ptr != line.data() + comma) {
        throw ParseError(where(), "bad doc id '" +
                                      line.substr(pos, comma - pos) + "'");
      }
      lq.expected.push_back(id);
      pos = comma + 1;
    }
    labels.push_back(std::move(lq));
  }
  return labels;
}

std::vector<LabeledQuery> load_labels_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open labels file");
  return load_labels(in, path);
}

}  // namespace textscreen
