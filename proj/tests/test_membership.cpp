#include "doctest.h"

#include "helpers.hpp"
#include "opn/membership.hpp"

using namespace opn;

namespace {

// One zero-testable counter that must climb forever on a^w; the accepting
// state sits behind a zero test that never fires again.
CounterMachine climb_forever_machine() {
  return opn_test::from_text(
      "alphabet a b\ncounters 1\nstates q0 qf\ninitial q0\naccept qf\n"
      "t q0 a * + q0\nt q0 b Z 0 qf\nt qf b * 0 qf\n");
}

// Blind two-step loop whose counter grows by one per step. Acceptance needs
// the pumping argument: configurations never repeat exactly.
CounterMachine growing_loop_machine() {
  return opn_test::from_text(
      "alphabet a\ncounters 1\nblind 0\nstates q0 q1\ninitial q0\naccept q0\n"
      "t q0 a * + q1\nt q1 a * + q0\n");
}

}  // namespace

TEST_CASE("accepting lassos come with a replayable witness") {
  CounterMachine m = opn_test::push_pop_machine();
  Verdict v = lasso_member(m, LassoWord("a", "b"));
  REQUIRE(v.kind == VerdictKind::Accept);
  REQUIRE(v.witness.has_value());
  CHECK(verify_witness(m, LassoWord("a", "b"), *v.witness));
}

TEST_CASE("a machine without accepting states rejects immediately") {
  CounterMachine m = opn_test::from_text(
      "alphabet a\ncounters 0\nstates q0\ninitial q0\naccept -\nt q0 a - - q0\n");
  MemberBounds tiny;
  tiny.node_budget = 1;
  Verdict v = lasso_member(m, LassoWord("", "a"), tiny);
  CHECK(v.kind == VerdictKind::Reject);
}

TEST_CASE("rejection is only claimed when the search was exhaustive") {
  CounterMachine m = opn_test::push_pop_machine();
  Verdict v = lasso_member(m, LassoWord("b", "a"));
  CHECK(v.kind == VerdictKind::Reject);
  CHECK(!v.clipped);
  CHECK(!v.node_overflow);
}

TEST_CASE("an unbounded climb behind a zero test stays unknown for budget reasons") {
  CounterMachine m = climb_forever_machine();
  MemberBounds bounds;
  bounds.counter_bound = 4;
  Verdict v = lasso_member(m, LassoWord("", "a"), bounds);
  CHECK(v.kind == VerdictKind::Unknown);
  CHECK(v.reason == UnknownReason::Budget);
  CHECK(v.clipped);
}

TEST_CASE("the pumping search upgrades growing blind loops to accept") {
  CounterMachine m = growing_loop_machine();
  MemberBounds bounds;
  bounds.counter_bound = 4;

  SUBCASE("with too short a horizon the verdict stays unknown") {
    bounds.cycle_bound = 1;
    Verdict v = lasso_member(m, LassoWord("", "a"), bounds);
    CHECK(v.kind == VerdictKind::Unknown);
    CHECK(v.reason == UnknownReason::Horizon);
  }
  SUBCASE("with enough unrollings a monotone witness appears") {
    bounds.cycle_bound = 3;
    Verdict v = lasso_member(m, LassoWord("", "a"), bounds);
    REQUIRE(v.kind == VerdictKind::Accept);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->monotone);
    CHECK(verify_witness(m, LassoWord("", "a"), *v.witness));
  }
}

TEST_CASE("witness verification notices tampering") {
  CounterMachine m = opn_test::push_pop_machine();
  LassoWord w("a", "b");
  Verdict v = lasso_member(m, w);
  REQUIRE(v.witness.has_value());

  SUBCASE("a bent stem counter") {
    RunWitness bad = *v.witness;
    REQUIRE(!bad.stem_configs.empty());
    bad.stem_configs.back().counters[0] += 1;
    CHECK(!verify_witness(m, w, bad));
  }
  SUBCASE("a bent cycle counter") {
    RunWitness bad = *v.witness;
    REQUIRE(!bad.cycle_configs.empty());
    bad.cycle_configs.back().counters[0] += 3;
    CHECK(!verify_witness(m, w, bad));
  }
  SUBCASE("a dropped loop step") {
    RunWitness bad = *v.witness;
    REQUIRE(!bad.run.cycle_transitions.empty());
    bad.run.cycle_transitions.clear();
    bad.cycle_configs.clear();
    CHECK(!verify_witness(m, w, bad));
  }
}

TEST_CASE("membership checks validate their inputs") {
  CHECK_THROWS(lasso_member(opn_test::from_text("alphabet a\ncounters 0\nstates q0\ninitial q0\n"
                                                "muller {q0}\nt q0 a - - q0\n"),
                            LassoWord("", "a")));
  CHECK_THROWS(lasso_member(opn_test::push_pop_machine(), LassoWord("", "z")));
}

TEST_CASE("the coded search rejects ill-formed prefixes") {
  CounterMachine sim = build_block_simulator(opn_test::push_pop_machine()).machine;
  CHECK_THROWS(coded_member(sim, decode_prefix("0ab")));     // decode error
  CHECK_THROWS(coded_member(sim, decode_prefix("A0aB00")));  // trailing partial block
  CHECK_THROWS(coded_member(sim, decode_prefix("A0zB00z")));  // foreign payload letter
}

TEST_CASE("a tiny node budget reports truncation instead of lying") {
  CounterMachine sim = build_block_simulator(opn_test::push_pop_machine()).machine;
  CodedMemberOptions opts;
  opts.node_budget = 5;
  CodedReport report = coded_member(sim, LassoWord("a", "b"), 6, opts);
  CHECK(report.truncated);
  CHECK(report.truncated_block >= 1);
}

TEST_CASE("dominance pruning thins frontiers but keeps the evidence") {
  BlockSimulator b = build_block_simulator(opn_test::push_pop_machine());
  LassoWord x("a", "b");
  CodedMemberOptions exact;
  CodedMemberOptions pruned;
  pruned.prune_dominated = true;
  CodedReport full = coded_member(b.machine, x, 8, exact);
  CodedReport thin = coded_member(b.machine, x, 8, pruned);
  REQUIRE(full.survivors.size() == thin.survivors.size());
  for (size_t i = 0; i < full.survivors.size(); ++i) {
    CHECK(thin.survivors[i] <= full.survivors[i]);
    CHECK((thin.survivors[i] == 0) == (full.survivors[i] == 0));
  }
  CodedEvidence ev = coded_evidence(b, x, 8, pruned);
  CHECK(ev.kind == CodedEvidenceKind::Accepting);
}
