#include "doctest.h"

#include "helpers.hpp"
#include "opn/coding.hpp"
#include "opn/compose.hpp"
#include "opn/membership.hpp"

using namespace opn;

namespace {

CounterMachine only_as() {
  // Accepts exactly a^omega (any 'b' is a dead end).
  return opn_test::from_text(
      "alphabet a b\n"
      "counters 0\n"
      "states q0\n"
      "initial q0\n"
      "accept q0\n"
      "t q0 a - - q0\n");
}

CounterMachine only_bs() {
  return opn_test::from_text(
      "alphabet a b\n"
      "counters 0\n"
      "states q0\n"
      "initial q0\n"
      "accept q0\n"
      "t q0 b - - q0\n");
}

}  // namespace

TEST_CASE("union accepts what either operand accepts and rejects the rest") {
  CounterMachine u = union_machines(only_as(), only_bs());
  CHECK(validate(u).empty());
  CHECK(lasso_member(u, LassoWord("", "a")).kind == VerdictKind::Accept);
  CHECK(lasso_member(u, LassoWord("", "b")).kind == VerdictKind::Accept);
  CHECK(lasso_member(u, LassoWord("", "ab")).kind == VerdictKind::Reject);
  CHECK(lasso_member(u, LassoWord("ab", "a")).kind == VerdictKind::Reject);
}

TEST_CASE("union pads counters and keeps blindness only where both operands are blind") {
  CounterMachine one_counter = opn_test::push_pop_machine();  // zero-testable counter
  CounterMachine finite = only_as();                          // no counters
  UnionResult u = union_machines_mapped(one_counter, finite);
  CHECK(u.machine.num_counters == 1);
  // The finite operand never moves counter 0, so its (padded) counter is
  // blind there; the push-pop machine zero-tests it, so the union cannot
  // treat it as blind.
  CHECK(u.machine.blind == std::vector<bool>{false});
  CHECK(u.machine.initial == 0);
  CHECK(u.map1.size() == one_counter.num_states());
  CHECK(u.map2.size() == finite.num_states());

  // Padded machine still accepts its own language.
  CHECK(lasso_member(u.machine, LassoWord("ab", "b")).kind == VerdictKind::Accept);
  CHECK(lasso_member(u.machine, LassoWord("", "a")).kind == VerdictKind::Accept);
}

TEST_CASE("union of two all-blind machines stays all-blind") {
  CounterMachine m1 = opn_test::from_text(
      "alphabet a\ncounters 1\nblind 0\nstates q0\ninitial q0\naccept q0\nt q0 a * + q0\n");
  CounterMachine m2 = opn_test::from_text(
      "alphabet a\ncounters 2\nblind 0 1\nstates q0\ninitial q0\naccept q0\nt q0 a ** ++ q0\n");
  CounterMachine u = union_machines(m1, m2);
  CHECK(u.num_counters == 2);
  CHECK(u.all_blind());
}

TEST_CASE("union requires matching alphabets and Buechi acceptance") {
  CounterMachine m1 = only_as();
  CounterMachine other = opn_test::all_accepting("xy");
  CHECK_THROWS_AS(union_machines(m1, other), std::invalid_argument);
}

TEST_CASE("product with the shape automaton accepts exactly well-shaped words") {
  Alphabet sigma("ab");
  CounterMachine every = opn_test::all_accepting("AB0ab");
  ProductResult p = product_with_shape(every, shape_automaton(sigma));
  CHECK(validate(p.machine).empty());
  CHECK(p.origins.size() == p.machine.num_states());

  // Alternating blocks forever: in the shape language.
  CHECK(lasso_member(p.machine, LassoWord("A0a", "B00bA000a")).kind == VerdictKind::Accept);
  // Stuck on zeros forever: no payload, not in the shape language.
  CHECK(lasso_member(p.machine, LassoWord("A", "0")).kind == VerdictKind::Reject);
  // Wrong first separator.
  CHECK(lasso_member(p.machine, LassoWord("B0a", "A00b")).kind == VerdictKind::Reject);
  // Two payload letters in a row break the shape.
  CHECK(lasso_member(p.machine, LassoWord("A0aa", "B00b")).kind == VerdictKind::Reject);
}

TEST_CASE("product acceptance needs both obligations infinitely often") {
  // Machine accepts only words with infinitely many 'a' payloads (its F-state
  // is entered exactly on 'a'); the product with the shape automaton should
  // then reject shapes whose payloads are eventually all 'b'.
  CounterMachine m = opn_test::from_text(
      "alphabet A B 0 a b\n"
      "counters 0\n"
      "states idle hit\n"
      "initial idle\n"
      "accept hit\n"
      "t idle A - - idle\nt idle B - - idle\nt idle 0 - - idle\n"
      "t idle a - - hit\nt idle b - - idle\n"
      "t hit A - - idle\nt hit B - - idle\nt hit 0 - - idle\n"
      "t hit a - - hit\nt hit b - - idle\n");
  ProductResult p = product_with_shape(m, shape_automaton(Alphabet("ab")));
  CHECK(lasso_member(p.machine, LassoWord("", "A0aB00a")).kind == VerdictKind::Accept);
  CHECK(lasso_member(p.machine, LassoWord("A0a", "B00bA000b")).kind == VerdictKind::Reject);
}
