#include "doctest.h"

#include "helpers.hpp"
#include "opn/semantics.hpp"

using namespace opn;

TEST_CASE("validate accepts the fixture machines") {
  CHECK(validate(opn_test::push_pop_machine()).empty());
  CHECK(validate(opn_test::all_accepting("ab")).empty());
  CHECK(validate(opn_test::zero_loop_machine("a")).empty());
}

TEST_CASE("validate flags structural problems") {
  CounterMachine m = opn_test::push_pop_machine();

  SUBCASE("initial state out of range") {
    m.initial = 9;
    CHECK(!validate(m).empty());
  }
  SUBCASE("transition letter outside the alphabet") {
    m.transitions[0].letter = 'z';
    CHECK(!validate(m).empty());
  }
  SUBCASE("guard arity mismatch") {
    m.transitions[0].guards.push_back(GuardTest::Any);
    CHECK(!validate(m).empty());
  }
  SUBCASE("decrement under a zero guard") {
    m.transitions[0].guards[0] = GuardTest::Zero;
    m.transitions[0].effects[0] = -1;
    CHECK(!validate(m).empty());
  }
  SUBCASE("zero test on a blind counter") {
    m.blind[0] = true;
    m.transitions[2].guards[0] = GuardTest::Zero;
    m.transitions[2].effects[0] = 0;
    CHECK(!validate(m).empty());
  }
  SUBCASE("accepting state out of range") {
    m.acceptance.buchi.push_back(17);
    CHECK(!validate(m).empty());
  }
}

TEST_CASE("guard semantics: zero, positive, any") {
  CounterMachine m = opn_test::push_pop_machine();
  Configuration zero = initial_configuration(m);
  REQUIRE(zero.counters == std::vector<int32_t>{0});

  // From q0 on 'a': the Any-guarded push is enabled at zero.
  auto succ = successors(m, zero, 'a');
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].state == 0);
  CHECK(succ[0].counters[0] == 1);

  // From q1 at zero on 'a': the Positive-guarded pop is not enabled.
  Configuration q1_zero{1, {0}};
  CHECK(successors(m, q1_zero, 'a').empty());

  // From q1 at one: pop fires.
  Configuration q1_one{1, {1}};
  succ = successors(m, q1_one, 'a');
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].counters[0] == 0);
}

TEST_CASE("an unguarded decrement at zero is simply not enabled") {
  CounterMachine m = opn_test::from_text(
      "alphabet a\n"
      "counters 1\n"
      "blind 0\n"
      "states q0\n"
      "initial q0\n"
      "accept q0\n"
      "t q0 a * - q0\n");
  CHECK(successors(m, initial_configuration(m), 'a').empty());
  Configuration one{0, {1}};
  auto succ = successors(m, one, 'a');
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].counters[0] == 0);
}

TEST_CASE("run_prefixes matches the independent enumerator on fixtures") {
  for (const Word& w : {Word("ab"), Word("aabba"), Word(""), Word("bbbb"), Word("aaaaabb")}) {
    CounterMachine m = opn_test::push_pop_machine();
    RunExploration e = run_prefixes(m, w);
    CHECK(!e.truncated);
    auto expected = opn_test::oracle_runs(m, w);
    REQUIRE(e.runs.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i) {
      CHECK(e.runs[i] == expected[i]);
      CHECK(e.runs[i].accept_visits == expected[i].accept_visits);
    }
  }
}

TEST_CASE("run_prefixes respects the node budget and reports truncation") {
  CounterMachine m = opn_test::from_text(
      "alphabet a\n"
      "counters 0\n"
      "states q0 q1\n"
      "initial q0\n"
      "accept q0\n"
      "t q0 a - - q0\n"
      "t q0 a - - q1\n"
      "t q1 a - - q0\n"
      "t q1 a - - q1\n");
  ExploreOptions opts;
  opts.node_budget = 10;
  RunExploration e = run_prefixes(m, "aaaaaaaaaa", opts);
  CHECK(e.truncated);
}

TEST_CASE("lasso run acceptance for Buechi and Muller") {
  CounterMachine m = opn_test::push_pop_machine();
  LassoRunStates in{{0}, {1}};
  LassoRunStates out{{1}, {0}};
  CHECK(buchi_accepts_lasso_run(m, in));
  CHECK(!buchi_accepts_lasso_run(m, out));
  CHECK_THROWS_AS(muller_accepts_lasso_run(m, in), std::invalid_argument);

  CounterMachine mm = opn_test::from_text(
      "alphabet a\n"
      "counters 0\n"
      "states q0 q1\n"
      "initial q0\n"
      "muller {q0 q1} {q1}\n"
      "t q0 a - - q1\n"
      "t q1 a - - q0\n"
      "t q1 a - - q1\n");
  CHECK(muller_accepts_lasso_run(mm, LassoRunStates{{}, {0, 1}}));
  CHECK(muller_accepts_lasso_run(mm, LassoRunStates{{0}, {1}}));
  CHECK(!muller_accepts_lasso_run(mm, LassoRunStates{{1}, {0}}));
  CHECK_THROWS_AS(buchi_accepts_lasso_run(mm, in), std::invalid_argument);
}
