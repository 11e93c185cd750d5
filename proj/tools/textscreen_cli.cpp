// Command-line frontend: index, search, serve, bench, eval, synth.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "textscreen/eval.hpp"
#include "textscreen/ingest.hpp"
#include "textscreen/service.hpp"
#include "textscreen/synth.hpp"

namespace {

using namespace textscreen;

struct CommonOpts {
  std::string input;
  int k = 20;
  double sigma = 60.0;
  std::string thresholds = "3:0,6:1,10:2,999:3";
  std::string costs_path;
  std::size_t shards = 1;
  std::size_t window = kDefaultWindowLimit;
  std::string weighted = "auto";  // auto | on | off
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--input", opts.input, "Reference list (doc_id<TAB>name)")
      ->required();
  cmd->add_option("--k", opts.k, "Result slots / discrimination bound");
  cmd->add_option("--sigma", opts.sigma, "Minimum score kept, in [0,100]");
  cmd->add_option("--thresholds", opts.thresholds,
                  "Edit budget schedule, maxlen:budget[,...]");
  cmd->add_option("--costs", opts.costs_path,
                  "Cost file (op<TAB>a<TAB>b<TAB>cost)");
  cmd->add_option("--shards", opts.shards, "Trie shard count");
  cmd->add_option("--window", opts.window, "Query window limit (>= 1)");
  cmd->add_option("--weighted", opts.weighted,
                  "Weighted similarity: auto, on, off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
}

PipelineOptions pipeline_options(const CommonOpts& opts) {
  PipelineOptions p;
  p.filter.k = opts.k;
  p.filter.sigma = opts.sigma;
  p.schedule = ThresholdSchedule::parse(opts.thresholds);
  if (!opts.costs_path.empty()) p.costs = CostModel::load_file(opts.costs_path);
  p.n_shards = opts.shards;
  p.window_limit = opts.window;
  if (opts.weighted == "on") p.weighted = true;
  if (opts.weighted == "off") p.weighted = false;
  return p;
}

Screener build_screener(const CommonOpts& opts) {
  std::vector<Document> docs = load_reference_file(opts.input);
  if (docs.empty()) {
    throw ConfigError(opts.input + ": no documents");
  }
  return Screener(std::move(docs), pipeline_options(opts));
}

std::vector<std::string> load_query_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open query file");
  std::vector<std::string> queries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    queries.push_back(line);
  }
  if (queries.empty()) throw ConfigError(path + ": no queries");
  return queries;
}

double percentile(std::vector<double> sorted, double q) {
  // Nearest-rank on an already sorted sample.
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * n));
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

int cmd_index(const CommonOpts& opts, bool as_json) {
  const Screener screener = build_screener(opts);
  const IndexSummary& s = screener.summary();
  if (as_json) {
    const nlohmann::ordered_json j = {{"docs", s.docs},
                                      {"distinct_tokens", s.distinct_tokens},
                                      {"trie_nodes", s.trie_nodes},
                                      {"shards", s.shards},
                                      {"build_ms", s.build_ms}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "docs            " << s.docs << "\n"
              << "distinct tokens " << s.distinct_tokens << "\n"
              << "trie nodes      " << s.trie_nodes << "\n"
              << "shards          " << s.shards << "\n"
              << "build ms        " << s.build_ms << "\n";
  }
  return 0;
}

int cmd_search(const CommonOpts& opts, const std::string& query,
               const std::string& format) {
  const Screener screener = build_screener(opts);
  const QueryFormat fmt =
      format == "mt" ? QueryFormat::kMt : QueryFormat::kText;
  const ScreenOutcome outcome = screener.screen(query, fmt);
  std::cout << result_json(outcome) << "\n";
  std::fprintf(stderr, "latency_ms=%.3f\n", outcome.latency_ms);
  return 0;
}

int cmd_serve(const CommonOpts& opts, const std::string& host, int port) {
  ScreenService service;
  service.install(std::make_shared<const Screener>(build_screener(opts)));
  std::fprintf(stderr, "listening on %s:%d\n", host.c_str(), port);
  return run_http_server(service, host, port);
}

int cmd_bench(const CommonOpts& opts, const std::string& query_path,
              int repetitions, const std::string& csv_path) {
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  const Screener screener = build_screener(opts);
  const std::vector<std::string> queries = load_query_lines(query_path);

  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw ParseError(csv_path, "cannot open CSV output");
    csv << "query_index,repetition,latency_ms\n";
  }

  std::vector<double> latencies;
  latencies.reserve(queries.size() * static_cast<std::size_t>(repetitions));
  for (int rep = 0; rep < repetitions; ++rep) {
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const ScreenOutcome outcome = screener.screen_text(queries[i]);
      latencies.push_back(outcome.latency_ms);
      if (csv.is_open()) {
        csv << i << ',' << rep << ',' << outcome.latency_ms << "\n";
      }
    }
  }
  std::sort(latencies.begin(), latencies.end());
  std::printf("queries      %zu\n", queries.size());
  std::printf("repetitions  %d\n", repetitions);
  std::printf("p50_ms       %.3f\n", percentile(latencies, 50));
  std::printf("p95_ms       %.3f\n", percentile(latencies, 95));
  std::printf("p99_ms       %.3f\n", percentile(latencies, 99));
  std::printf("max_ms       %.3f\n", latencies.back());
  return 0;
}

int cmd_eval(const CommonOpts& opts, const std::string& labels_path,
             double beta, const std::string& output) {
  const Screener screener = build_screener(opts);
  const std::vector<LabeledQuery> labels = load_labels_file(labels_path);

  std::vector<std::vector<DocId>> retrieved;
  retrieved.reserve(labels.size());
  for (const LabeledQuery& lq : labels) {
    const ScreenOutcome outcome = screener.screen_text(lq.query_text);
    std::vector<DocId> ids;
    ids.reserve(outcome.results.size());
    for (const ScoredResult& r : outcome.results) ids.push_back(r.doc_id);
    retrieved.push_back(std::move(ids));
  }
  const EvalMetrics m = evaluate(retrieved, labels, beta);

  if (output == "json") {
    const nlohmann::ordered_json j = {
        {"queries", m.n_queries},   {"tp", m.tp},
        {"fp", m.fp},               {"fn", m.fn},
        {"beta", m.beta},           {"precision", m.precision},
        {"recall", m.recall},       {"f_beta", m.f_beta},
        {"macro_precision", m.macro_precision},
        {"macro_recall", m.macro_recall},
        {"macro_f_beta", m.macro_f_beta}};
    std::cout << j.dump() << "\n";
  } else {
    std::printf("queries    %zu\n", m.n_queries);
    std::printf("tp/fp/fn   %zu/%zu/%zu\n", m.tp, m.fp, m.fn);
    std::printf("precision  %.6f\n", m.precision);
    std::printf("recall     %.6f\n", m.recall);
    std::printf("F_%.0f        %.6f\n", m.beta, m.f_beta);
    std::printf("macro P/R  %.6f/%.6f\n", m.macro_precision, m.macro_recall);
    std::printf("macro F    %.6f\n", m.macro_f_beta);
  }
  return 0;
}

int cmd_synth(std::size_t docs, double typo_rate, std::uint64_t seed,
              std::size_t n_queries, const std::string& ref_path,
              const std::string& labels_path) {
  SynthConfig cfg;
  cfg.n_docs = docs;
  cfg.typo_rate = typo_rate;
  cfg.seed = seed;
  cfg.n_queries = n_queries;
  const SynthCorpus corpus = synth_corpus(cfg);

  std::ofstream ref(ref_path);
  if (!ref) throw ParseError(ref_path, "cannot open output");
  for (const Document& doc : corpus.documents) {
    ref << doc.id << '\t' << doc.raw_name << "\n";
  }

  if (!labels_path.empty()) {
    std::ofstream labels(labels_path);
    if (!labels) throw ParseError(labels_path, "cannot open output");
    for (const LabeledQuery& lq : corpus.queries) {
      labels << lq.query_text << '\t';
      for (std::size_t i = 0; i < lq.expected.size(); ++i) {
        if (i > 0) labels << ',';
        labels << lq.expected[i];
      }
      labels << "\n";
    }
  }
  std::fprintf(stderr, "wrote %zu documents, %zu queries\n",
               corpus.documents.size(), corpus.queries.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Watch-list text screening engine"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* index = app.add_subcommand("index", "Build an index and report stats");
  add_common_flags(index, opts);
  bool index_json = false;
  index->add_flag("--json", index_json, "Emit the summary as JSON");

  auto* search = app.add_subcommand("search", "Screen one query");
  add_common_flags(search, opts);
  std::string query;
  std::string query_format = "text";
  search->add_option("--query", query, "Query payload")->required();
  search->add_option("--format", query_format, "Payload format: text or mt")
      ->check(CLI::IsMember({"text", "mt"}));

  auto* serve = app.add_subcommand("serve", "Run the HTTP screening service");
  add_common_flags(serve, opts);
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Bind port");

  auto* bench = app.add_subcommand("bench", "Replay queries, report latency");
  add_common_flags(bench, opts);
  std::string query_path;
  int repetitions = 1;
  std::string csv_path;
  bench->add_option("--queries", query_path, "Query file, one per line")
      ->required();
  bench->add_option("--repetitions", repetitions, "Replay count");
  bench->add_option("--csv", csv_path, "Per-query CSV output path");

  auto* eval = app.add_subcommand("eval", "Precision/recall over labels");
  add_common_flags(eval, opts);
  std::string labels_path;
  double beta = 5.0;
  std::string eval_output = "table";
  eval->add_option("--labels", labels_path,
                   "Labels file (query<TAB>id[,id...])")
      ->required();
  eval->add_option("--beta", beta, "F_beta weight");
  eval->add_option("--output", eval_output, "Output: table or json")
      ->check(CLI::IsMember({"table", "json"}));

  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus");
  std::size_t synth_docs = 1000;
  double typo_rate = 0.3;
  std::uint64_t seed = 1;
  std::size_t synth_queries = 0;
  std::string out_ref;
  std::string out_labels;
  synth->add_option("--docs", synth_docs, "Document count");
  synth->add_option("--typo-rate", typo_rate, "Per-token typo probability");
  synth->add_option("--seed", seed, "RNG seed");
  synth->add_option("--queries", synth_queries,
                    "Query count (0 = min(docs, 1000))");
  synth->add_option("--out-ref", out_ref, "Reference list output")->required();
  synth->add_option("--out-labels", out_labels, "Labels output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*index) return cmd_index(opts, index_json);
    if (*search) return cmd_search(opts, query, query_format);
    if (*serve) return cmd_serve(opts, host, port);
    if (*bench) return cmd_bench(opts, query_path, repetitions, csv_path);
    if (*eval) return cmd_eval(opts, labels_path, beta, eval_output);
    if (*synth) {
      return cmd_synth(synth_docs, typo_rate, seed, synth_queries, out_ref,
                       out_labels);
    }
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
  return 0;
}
