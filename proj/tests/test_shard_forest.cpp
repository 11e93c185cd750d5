#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "textscreen/shard_forest.hpp"
#include "textscreen/types.hpp"

using namespace textscreen;

namespace {

std::vector<Document> demo_corpus() {
  return fixtures::make_docs({
      {1, "TAMERLAAN TZARNAEV"},
      {2, "MARIAN OYA CELTIK"},
      {3, "KWANGSON BANKING CO"},
      {4, "KBC FINANCIAL INC"},
      {5, "AHMET MIYESE"},
      {6, "DURAN MAKIN"},
      {7, "HERMANN"},
      {8, "ODESSA AIR"},
      {9, "MUHAMMAD SALAH"},
      {10, "ATC LTD"},
      {11, "CITY BANK"},
      {12, "NETHERLANDS COMPANY"},
      {13, "BANK OF ODESSA"},
      {14, "MAKIN TRADING"},
      {15, "EMRE HOLDING"},
  });
}

bool equal_results(const std::vector<ScoredResult>& a,
                   const std::vector<ScoredResult>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].doc_id != b[i].doc_id) return false;
    if (a[i].raw_name != b[i].raw_name) return false;
    if (a[i].score != b[i].score) return false;  // bitwise
    if (a[i].matches.size() != b[i].matches.size()) return false;
    for (std::size_t j = 0; j < a[i].matches.size(); ++j) {
      const auto& x = a[i].matches[j];
      const auto& y = b[i].matches[j];
      if (x.query_token != y.query_token) return false;
      if (x.record_token != y.record_token) return false;
      if (x.cost != y.cost) return false;
      if (x.similarity != y.similarity) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("shard_forest") {

TEST_CASE("round robin assigns positions cyclically") {
  const ShardPlan plan = ShardPlan::round_robin(5, 2);
  CHECK(plan.n_shards == 2);
  CHECK(plan.shard_by_position == std::vector<std::size_t>{0, 1, 0, 1, 0});
  CHECK_THROWS_AS(ShardPlan::round_robin(5, 0), ConfigError);
}

TEST_CASE("forest build validates the shard count") {
  CHECK_THROWS_AS(Forest::build(demo_corpus(), 0), ConfigError);
  CHECK_THROWS_AS(Forest::build(demo_corpus(), 16), ConfigError);  // 15 docs
  const Forest forest = Forest::build(demo_corpus(), 4);
  CHECK(forest.shard_count() == 4);
  CHECK(forest.stats().doc_count() == 15);
  CHECK(forest.node_count() > 0);
}

TEST_CASE("every document lands on exactly one shard") {
  const Forest forest = Forest::build(demo_corpus(), 3);
  std::size_t with_tamerlaan = 0;
  for (std::size_t s = 0; s < forest.shard_count(); ++s) {
    if (forest.shard(s).find_postings("tamerlaan") != nullptr) ++with_tamerlaan;
  }
  CHECK(with_tamerlaan == 1);
  // Stats stay corpus-global regardless of sharding.
  CHECK(forest.stats().doc_freq("odessa") == 2);
}

TEST_CASE("results are identical for every shard count") {
  const std::vector<std::string> queries = {
      "TAMERLAAN TZARNAEV",    "MARIA CELTIQ",     "CITI BANK",
      "NETHER LANDS COMPANY",  "AHMET EMRE MIYESE", "ODESSA",
      "435021 BANK KBC",       "INVOICE RECEIPT",
  };
  const CostModel unit;
  const auto sched = ThresholdSchedule::defaults();
  const FilterConfig cfg{10, 0.0};

  const Forest reference = Forest::build(demo_corpus(), 1);
  for (const std::size_t n : {2u, 3u, 5u, 15u}) {
    const Forest forest = Forest::build(demo_corpus(), n);
    for (const auto& text : queries) {
      const auto a = search_forest(reference, expand_query(text), unit, sched,
                                   cfg);
      const auto b = search_forest(forest, expand_query(text), unit, sched,
                                   cfg);
      CHECK(equal_results(a, b));
      // Byte-identical on the wire as well.
      CHECK(shard_response_json({a}) == shard_response_json({b}));
    }
  }
}

TEST_CASE("run_shard_query honours the request's filter settings") {
  const Forest forest = Forest::build(demo_corpus(), 1);
  const ShardRequest request{expand_query("ODESSA"), FilterConfig{1, 0.0},
                             false};
  const ShardResponse response =
      run_shard_query(forest.shard(0), forest.stats(), request, CostModel{},
                      ThresholdSchedule::defaults());
  CHECK(response.results.size() <= 1);
}

TEST_CASE("frames round-trip length-prefixed payloads") {
  std::stringstream s;
  write_frame(s, "hello");
  write_frame(s, "");
  write_frame(s, std::string(1000, 'x'));
  CHECK(read_frame(s) == "hello");
  CHECK(read_frame(s) == "");
  CHECK(read_frame(s).size() == 1000);
}

TEST_CASE("frames reject truncation and oversize lengths") {
  {
    std::stringstream s;
    s.write("\x00\x00", 2);
    CHECK_THROWS_AS(read_frame(s), ParseError);
  }
  {
    std::stringstream s;
    s.write("\x00\x00\x00\x05" "abc", 7);  // promises 5 bytes, delivers 3
    CHECK_THROWS_AS(read_frame(s), ParseError);
  }
  {
    std::stringstream s;
    s.write("\x04\x00\x00\x01", 4);  // 64 MiB + 1
    CHECK_THROWS_AS(read_frame(s), ParseError);
  }
  CHECK_THROWS_AS(
      [] {
        std::stringstream s;
        write_frame(s, std::string((64u << 20) + 1, 'x'));
      }(),
      ParseError);
}

TEST_CASE("shard requests round-trip through JSON") {
  ShardRequest request{expand_query("nether lands trading"),
                       FilterConfig{7, 42.5}, true};
  const ShardRequest parsed =
      parse_shard_request(shard_request_json(request));
  CHECK(parsed.query.base == request.query.base);
  REQUIRE(parsed.query.windows.size() == request.query.windows.size());
  for (std::size_t i = 0; i < parsed.query.windows.size(); ++i) {
    CHECK(parsed.query.windows[i].token == request.query.windows[i].token);
    CHECK(parsed.query.windows[i].span_start ==
          request.query.windows[i].span_start);
    CHECK(parsed.query.windows[i].span_width ==
          request.query.windows[i].span_width);
  }
  CHECK(parsed.cfg.k == 7);
  CHECK(parsed.cfg.sigma == 42.5);
  CHECK(parsed.weighted == true);

  CHECK_THROWS_AS(parse_shard_request("{not json"), ParseError);
  CHECK_THROWS_AS(parse_shard_request("{\"query\":{}}"), ParseError);
}

TEST_CASE("shard responses round-trip through JSON bitwise") {
  ShardResponse response;
  response.results.push_back(
      {3, "KWANGSON BANKING CO", 100.0 / 3.0,
       {{"kbc", "kwangson", 5.0, 1.0 - 5.0 / 8.0}}});
  const ShardResponse parsed =
      parse_shard_response(shard_response_json(response));
  REQUIRE(parsed.results.size() == 1);
  CHECK(parsed.results[0].doc_id == 3);
  CHECK(parsed.results[0].raw_name == "KWANGSON BANKING CO");
  CHECK(parsed.results[0].score == 100.0 / 3.0);  // shortest-round-trip dump
  REQUIRE(parsed.results[0].matches.size() == 1);
  CHECK(parsed.results[0].matches[0].similarity == 1.0 - 5.0 / 8.0);

  CHECK_THROWS_AS(parse_shard_response("null"), ParseError);
}

TEST_CASE("a shard stream answers framed requests until EOF") {
  const Forest forest = Forest::build(demo_corpus(), 1);
  const CostModel unit;
  const auto sched = ThresholdSchedule::defaults();

  const ShardRequest q1{expand_query("TAMERLAAN TZARNAEV"),
                        FilterConfig{5, 0.0}, false};
  const ShardRequest q2{expand_query("ODESSA"), FilterConfig{5, 0.0}, false};

  std::stringstream in, out;
  write_frame(in, shard_request_json(q1));
  write_frame(in, shard_request_json(q2));
  serve_shard_stream(forest.shard(0), forest.stats(), unit, sched, in, out);

  const auto direct1 =
      run_shard_query(forest.shard(0), forest.stats(), q1, unit, sched);
  const auto direct2 =
      run_shard_query(forest.shard(0), forest.stats(), q2, unit, sched);
  CHECK(read_frame(out) == shard_response_json(direct1));
  CHECK(read_frame(out) == shard_response_json(direct2));
  CHECK_THROWS_AS(read_frame(out), ParseError);  // stream exhausted
}

}  // TEST_SUITE
