#include <doctest.h>

#include <sstream>

#include "textscreen/cost_model.hpp"
#include "textscreen/types.hpp"

using namespace textscreen;

TEST_SUITE("cost_model") {

TEST_CASE("default model is classic Levenshtein") {
  const CostModel m;
  CHECK(m.is_unit());
  CHECK(m.unit_indel());
  CHECK(m.insert_cost('a', 'b') == 1.0);
  CHECK(m.delete_cost('x', '9') == 1.0);
  CHECK(m.substitute_cost('a', 'b') == 1.0);
  CHECK(m.substitute_cost('a', 'a') == 0.0);
  CHECK(m.substitute_cost('7', '7') == 0.0);
}

TEST_CASE("setters are directional and flip the unit flags") {
  CostModel m;
  m.set_substitute_cost('q', 'w', 0.25);
  CHECK(m.substitute_cost('q', 'w') == 0.25);
  CHECK(m.substitute_cost('w', 'q') == 1.0);  // not symmetric by design
  CHECK_FALSE(m.is_unit());
  CHECK(m.unit_indel());  // only substitution was touched

  m.set_insert_cost('a', 'e', 0.5);
  CHECK_FALSE(m.unit_indel());
  CHECK(m.insert_cost('a', 'e') == 0.5);

  m.set_delete_cost('t', 'h', 0.0);
  CHECK(m.delete_cost('t', 'h') == 0.0);
}

TEST_CASE("setters reject out-of-domain input") {
  CostModel m;
  CHECK_THROWS_AS(m.set_substitute_cost('a', 'a', 0.5), ConfigError);
  CHECK_THROWS_AS(m.set_substitute_cost('A', 'b', 0.5), ConfigError);
  CHECK_THROWS_AS(m.set_insert_cost('\0', 'b', 0.5), ConfigError);
  CHECK_THROWS_AS(m.set_delete_cost('a', '-', 0.5), ConfigError);
  CHECK_THROWS_AS(m.set_insert_cost('a', 'b', 1.5), ConfigError);
  CHECK_THROWS_AS(m.set_insert_cost('a', 'b', -0.1), ConfigError);
}

TEST_CASE("boundary pairs stay at cost 1") {
  CostModel m;
  m.set_insert_cost('a', 'b', 0.1);
  CHECK(m.insert_cost('\0', 'b') == 1.0);
  CHECK(m.delete_cost('\0', 'z') == 1.0);
}

TEST_CASE("load parses tabbed rows, comments, overrides") {
  std::istringstream in(
      "# confusions\n"
      "S\tq\tw\t0.25\n"
      "\n"
      "I\ta\tb\t0.5\n"
      "D\tx\ty\t0\n"
      "S\tq\tw\t0.75\n");  // later rows win
  const CostModel m = CostModel::load(in);
  CHECK(m.substitute_cost('q', 'w') == 0.75);
  CHECK(m.insert_cost('a', 'b') == 0.5);
  CHECK(m.delete_cost('x', 'y') == 0.0);
  CHECK_FALSE(m.unit_indel());
}

TEST_CASE("load reports the offending line") {
  const auto where_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      CostModel::load(in, "costs.tsv");
    } catch (const ParseError& e) {
      return e.where();
    }
    return std::string("no error");
  };
  CHECK(where_of("S\tq\tw\n") == "costs.tsv:1");               // 3 columns
  CHECK(where_of("# ok\nS\tq\tw\tzz\n") == "costs.tsv:2");     // bad cost
  CHECK(where_of("Q\ta\tb\t1\n") == "costs.tsv:1");            // unknown op
  CHECK(where_of("S\tqq\tw\t0.5\n") == "costs.tsv:1");         // wide column
  CHECK(where_of("S\ta\ta\t0.5\n") == "costs.tsv:1");          // equal letters
  CHECK(where_of("S\ta\tb\t2\n") == "costs.tsv:1");            // out of range
}

TEST_CASE("threshold schedule maps length bands to budgets") {
  const auto sched = ThresholdSchedule::defaults();
  CHECK(sched.budget_for(1) == 0.0);
  CHECK(sched.budget_for(3) == 0.0);
  CHECK(sched.budget_for(4) == 1.0);
  CHECK(sched.budget_for(6) == 1.0);
  CHECK(sched.budget_for(7) == 2.0);
  CHECK(sched.budget_for(10) == 2.0);
  CHECK(sched.budget_for(11) == 3.0);
  CHECK(sched.budget_for(2000) == 3.0);  // beyond the last band
  CHECK(sched.max_budget() == 3.0);
  CHECK(sched.to_string() == "3:0,6:1,10:2,999:3");
}

TEST_CASE("threshold schedule accepts fractional budgets") {
  const auto sched = ThresholdSchedule::parse("4:0.5,999:1.5");
  CHECK(sched.budget_for(4) == 0.5);
  CHECK(sched.budget_for(5) == 1.5);
}

TEST_CASE("threshold schedule rejects malformed input") {
  CHECK_THROWS_AS(ThresholdSchedule::parse(""), ParseError);
  CHECK_THROWS_AS(ThresholdSchedule::parse("abc"), ParseError);
  CHECK_THROWS_AS(ThresholdSchedule::parse("6:1,3:0"), ParseError);
  CHECK_THROWS_AS(ThresholdSchedule::parse("3:2,6:1"), ParseError);
  CHECK_THROWS_AS(ThresholdSchedule::parse("0:1"), ParseError);
  CHECK_THROWS_AS(ThresholdSchedule::parse("3:-1"), ParseError);
  CHECK_THROWS_AS(ThresholdSchedule::parse("3:1,3:1"), ParseError);
}

}  // TEST_SUITE
