#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "textscreen/types.hpp"

namespace textscreen {

struct LabeledQuery {
  std::string query_text;
  std::vector<DocId> expected;  // empty = true negative
};

// Counts are micro-aggregated over all (query, expected-doc) pairs; the
// macro_* figures average the per-query metrics instead.
struct EvalMetrics {
  std::size_t n_queries = 0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double beta = 5.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_beta = 0.0;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f_beta = 0.0;
};

// (1 + beta^2) * P * R / (beta^2 * P + R); 0 when the denominator is 0.
double f_beta_score(double precision, double recall, double beta);

// retrieved[i] is the result id list for labels[i].  Zero-denominator
// conventions: a query retrieving nothing while expecting nothing scores
// precision = recall = 1 (a correct true negative); retrieving nothing
// while expecting something scores precision 0.  Throws ConfigError when
// the two lists differ in length.
EvalMetrics evaluate(const std::vector<std::vector<DocId>>& retrieved,
                     const std::vector<LabeledQuery>& labels,
                     double beta = 5.0);

// `query_text<TAB>doc_id[,doc_id...]` per line, empty id list marking a
// true negative; '#' comments and blank lines skipped.
std::vector<LabeledQuery> load_labels(std::istream& in,
                                      std::string_view source = "<stream>");
std::vector<LabeledQuery> load_labels_file(const std::string& path);

}  // namespace textscreen
