#include <doctest.h>

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "textscreen/fuzzy_search.hpp"
#include "textscreen/normalize.hpp"
#include "textscreen/trie_index.hpp"
#include "textscreen/types.hpp"

using namespace textscreen;

namespace {

// Collapses a candidate map into the oracle's shape for exact comparison.
oracle::ScanResult canon(const CandidateMap& cm) {
  oracle::ScanResult out;
  for (const auto& [id, set] : cm) {
    for (const auto& m : set.matches) {
      out[id][m.record_token] = {m.query_token, m.cost};
    }
  }
  return out;
}

bool same(const oracle::ScanResult& a, const oracle::ScanResult& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [id, tokens] : a) {
    const auto it = b.find(id);
    if (it == b.end() || it->second.size() != tokens.size()) return false;
    for (const auto& [token, match] : tokens) {
      const auto jt = it->second.find(token);
      if (jt == it->second.end()) return false;
      if (jt->second.query_token != match.query_token) return false;
      if (jt->second.cost != match.cost) return false;  // exact, on purpose
    }
  }
  return true;
}

std::string random_token(std::mt19937& rng, int alphabet, std::size_t max_len) {
  const std::size_t len = 1 + rng() % max_len;
  std::string t;
  for (std::size_t i = 0; i < len; ++i) {
    t.push_back(static_cast<char>('a' + rng() % alphabet));
  }
  return t;
}

ThresholdSchedule random_schedule(std::mt19937& rng) {
  const std::size_t l1 = 1 + rng() % 3;
  const std::size_t l2 = l1 + 1 + rng() % 4;
  const double b1 = (rng() % 3) * 0.5;          // 0, 0.5, 1
  const double b2 = b1 + (rng() % 4) * 0.5;     // non-decreasing
  const double b3 = b2 + (rng() % 5) * 0.75;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu:%.2f,%zu:%.2f,999:%.2f", l1, b1, l2, b2,
                b3);
  return ThresholdSchedule::parse(buf);
}

CostModel random_costs(std::mt19937& rng, int alphabet, bool unit_indel) {
  CostModel m;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int a = 0; a < alphabet; ++a) {
    for (int b = 0; b < alphabet; ++b) {
      const char ca = static_cast<char>('a' + a);
      const char cb = static_cast<char>('a' + b);
      if (!unit_indel) {
        if (rng() % 2) m.set_insert_cost(ca, cb, unit(rng));
        if (rng() % 2) m.set_delete_cost(ca, cb, unit(rng));
      }
      if (ca != cb && rng() % 2) m.set_substitute_cost(ca, cb, unit(rng));
    }
  }
  // The coin flips may leave every indel at 1; force the requested regime.
  if (!unit_indel && m.unit_indel()) m.set_insert_cost('a', 'a', 0.5);
  return m;
}

// One randomized dictionary + query set, engine vs. brute force.
void check_parity(std::mt19937& rng, bool unit_indel) {
  const int alphabet = 2 + static_cast<int>(rng() % 3);  // 2..4 letters
  const std::size_t n_docs = 5 + rng() % 40;

  std::vector<Document> docs;
  std::vector<std::string> dict_tokens;
  for (std::size_t i = 0; i < n_docs; ++i) {
    const std::size_t n_tokens = 1 + rng() % 3;
    std::string name;
    for (std::size_t t = 0; t < n_tokens; ++t) {
      const std::string token = random_token(rng, alphabet, 8);
      dict_tokens.push_back(token);
      if (!name.empty()) name += ' ';
      name += token;
    }
    docs.push_back(make_document(static_cast<DocId>(i + 1), name));
  }

  std::vector<std::string> queries;
  const std::size_t n_queries = 1 + rng() % 3;
  for (std::size_t i = 0; i < n_queries; ++i) {
    if (rng() % 2 == 0) {
      // Mutate a dictionary token so some searches land near an entry.
      std::string q = dict_tokens[rng() % dict_tokens.size()];
      const std::size_t edits = rng() % 3;
      for (std::size_t e = 0; e < edits && !q.empty(); ++e) {
        q[rng() % q.size()] = static_cast<char>('a' + rng() % alphabet);
      }
      queries.push_back(q);
    } else {
      queries.push_back(random_token(rng, alphabet, 8));
    }
  }

  const CostModel costs = random_costs(rng, alphabet, unit_indel);
  const ThresholdSchedule schedule = random_schedule(rng);
  REQUIRE(costs.unit_indel() == unit_indel);

  const auto stats = DictionaryStats::build(docs);
  const TrieIndex trie = TrieIndex::build(stats);

  CandidateMap engine;
  for (const auto& q : queries) {
    search_token(trie, q, costs, schedule, engine);
  }
  const auto expected = oracle::scan_matches(docs, queries, costs, schedule);
  CHECK(same(canon(engine), expected));
}

}  // namespace

TEST_SUITE("fuzzy_search") {

TEST_CASE("weighted distance equals the full-matrix reference bitwise") {
  std::mt19937 rng(42);
  for (int round = 0; round < 300; ++round) {
    const int alphabet = 2 + static_cast<int>(rng() % 3);
    const CostModel costs = random_costs(rng, alphabet, round % 2 == 0);
    const std::string a = random_token(rng, alphabet, 10);
    const std::string b = random_token(rng, alphabet, 10);
    CHECK(weighted_edit_distance(a, b, costs) ==
          oracle::weighted_distance(a, b, costs));
  }
}

TEST_CASE("weighted distance handles empty strings") {
  const CostModel unit;
  CHECK(weighted_edit_distance("", "", unit) == 0.0);
  CHECK(weighted_edit_distance("abc", "", unit) == 3.0);
  CHECK(weighted_edit_distance("", "abc", unit) == 3.0);
}

TEST_CASE("all-ones matrices reduce to classic Levenshtein") {
  const CostModel unit;
  std::mt19937 rng(7);
  for (int round = 0; round < 1000; ++round) {
    const std::string a = random_token(rng, 4, 10);
    const std::string b = random_token(rng, 4, 10);
    CHECK(weighted_edit_distance(a, b, unit) ==
          static_cast<double>(oracle::levenshtein(a, b)));
  }
  CHECK(weighted_edit_distance("ahmet", "ahmed", unit) == 1.0);
  // Substitute m->n, then delete i and r.
  CHECK(weighted_edit_distance("ozdemir", "ozden", unit) == 3.0);
  CHECK(oracle::levenshtein("ozdemir", "ozden") == 3);
}

TEST_CASE("custom costs price cheap confusions below unit") {
  CostModel costs;
  costs.set_substitute_cost('t', 'd', 0.2);
  CHECK(weighted_edit_distance("ahmet", "ahmed", costs) == 0.2);
  CHECK(weighted_edit_distance("ahmed", "ahmet", costs) == 1.0);  // directional
}

TEST_CASE("traversal equals brute force on random instances") {
  std::mt19937 rng(1234);
  for (int round = 0; round < 75; ++round) check_parity(rng, true);
  for (int round = 0; round < 75; ++round) check_parity(rng, false);
}

TEST_CASE("acceptance budget uses the longer of query and record") {
  const auto stats = DictionaryStats::build(
      fixtures::make_docs({{1, "ABCD"}, {2, "ABC"}, {3, "ABD"}}));
  const TrieIndex trie = TrieIndex::build(stats);
  const CostModel unit;
  const auto sched = ThresholdSchedule::defaults();  // len<=3 exact

  CandidateMap out;
  search_token(trie, "abc", unit, sched, out);
  // "abc" -> "abc": cost 0.  "abc" -> "abd": budget_for(3) = 0, rejected.
  // "abc" -> "abcd": cost 1 within budget_for(4) = 1 despite m = 3.
  CHECK(out.size() == 2);
  REQUIRE(out.contains(2));
  CHECK(out.at(2).matches[0].cost == 0.0);
  REQUIRE(out.contains(1));
  CHECK(out.at(1).matches[0].cost == 1.0);
  CHECK_FALSE(out.contains(3));
}

TEST_CASE("record may be shorter than the query when budget allows") {
  const auto stats =
      DictionaryStats::build(fixtures::make_docs({{1, "ABCD"}, {2, "AB"}}));
  const TrieIndex trie = TrieIndex::build(stats);
  const CostModel unit;

  CandidateMap wide;
  search_token(trie, "abcdefgh", unit, ThresholdSchedule::parse("999:4"), wide);
  REQUIRE(wide.contains(1));  // 4 deletions, exactly at budget
  CHECK(wide.at(1).matches[0].cost == 4.0);
  CHECK_FALSE(wide.contains(2));  // distance 6

  CandidateMap tight;
  search_token(trie, "abcdefgh", unit, ThresholdSchedule::parse("999:3"), tight);
  CHECK(tight.empty());
}

TEST_CASE("short query reaches longer records inside a wide band") {
  const auto stats = DictionaryStats::build(fixtures::make_docs({{1, "ABXYZ"}}));
  const TrieIndex trie = TrieIndex::build(stats);
  CandidateMap out;
  search_token(trie, "ab", CostModel{}, ThresholdSchedule::parse("3:0,6:3"),
               out);
  REQUIRE(out.contains(1));  // 3 insertions within budget_for(5) = 3
  CHECK(out.at(1).matches[0].cost == 3.0);
}

TEST_CASE("min-cost retention keeps the cheapest, first on ties") {
  const auto stats = DictionaryStats::build(fixtures::make_docs({{1, "ABCD"}}));
  const TrieIndex trie = TrieIndex::build(stats);
  const CostModel unit;
  const auto sched = ThresholdSchedule::defaults();

  CandidateMap out;
  search_token(trie, "abxd", unit, sched, out);  // cost 1
  search_token(trie, "abcd", unit, sched, out);  // cost 0, replaces
  REQUIRE(out.contains(1));
  REQUIRE(out.at(1).matches.size() == 1);
  CHECK(out.at(1).matches[0].query_token == "abcd");
  CHECK(out.at(1).matches[0].cost == 0.0);

  CandidateMap ties;
  search_token(trie, "abxd", unit, sched, ties);  // cost 1
  search_token(trie, "aycd", unit, sched, ties);  // also cost 1, ignored
  REQUIRE(ties.at(1).matches.size() == 1);
  CHECK(ties.at(1).matches[0].query_token == "abxd");
}

TEST_CASE("windowed query reunites split tokens at cost zero") {
  const auto stats = DictionaryStats::build(
      fixtures::make_docs({{1, "NETHERLANDS COMPANY"}, {2, "LAND TRUST"}}));
  const TrieIndex trie = TrieIndex::build(stats);
  const auto query = expand_query("nether lands company");

  const CandidateMap out =
      search_query(trie, query, CostModel{}, ThresholdSchedule::defaults());
  REQUIRE(out.contains(1));
  bool window_hit = false;
  for (const auto& m : out.at(1).matches) {
    if (m.record_token == "netherlands") {
      window_hit = true;
      CHECK(m.query_token == "netherlands");
      CHECK(m.cost == 0.0);
    }
  }
  CHECK(window_hit);
}

TEST_CASE("empty query token is rejected") {
  const auto stats = DictionaryStats::build(fixtures::make_docs({{1, "A"}}));
  const TrieIndex trie = TrieIndex::build(stats);
  CandidateMap out;
  CHECK_THROWS_AS(
      search_token(trie, "", CostModel{}, ThresholdSchedule::defaults(), out),
      ConfigError);
}

TEST_CASE("search on an empty trie finds nothing") {
  const TrieIndex trie;
  CandidateMap out;
  search_token(trie, "anything", CostModel{}, ThresholdSchedule::defaults(),
               out);
  CHECK(out.empty());
}

}  // TEST_SUITE
