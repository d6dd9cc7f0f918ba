#pragma once

#include <cstdint>
#include <vector>

#include "opn/machine.hpp"

namespace opn {

/// Structural well-formedness check. Empty result means the machine is sound:
/// indices in range, letters declared, guard/effect arity k, no Zero guard on
/// a blind counter, no Positive guard on a blind counter, no decrement under a
/// Zero guard, acceptance states declared.
std::vector<Diagnostic> validate(const CounterMachine& m);

/// True iff every counter satisfies the transition's guard in `c`.
bool guard_matches(const Transition& t, const Configuration& c);

/// Applies the transition's effect to `from`, writing the successor into
/// `to`. Returns false when some counter would go negative: that step is
/// simply not enabled, which is what makes an Any-guarded decrement blind.
bool apply_effect(const Transition& t, const Configuration& from, Configuration& to);

/// All configurations reachable from `c` in one step on letter `a`.
/// A transition is enabled when its guard matches and no counter would drop
/// below zero (the latter only arises for Any-guarded decrements at value 0).
/// Throws if `a` is not in the machine's alphabet.
std::vector<Configuration> successors(const CounterMachine& m, const Configuration& c, Letter a);

Configuration initial_configuration(const CounterMachine& m);

/// A complete run of m on a finite word: configurations[0] is the initial
/// configuration, configurations[i] the one after consuming w[0..i).
/// accept_visits counts positions (including position 0) whose state lies in
/// the Büchi set; 0 for Muller machines.
struct RunPrefix {
    std::vector<Configuration> configurations;
    Word consumed;
    uint32_t accept_visits = 0;

    bool operator<(const RunPrefix& o) const { return configurations < o.configurations; }
    bool operator==(const RunPrefix& o) const { return configurations == o.configurations; }
};

struct RunExploration {
    std::vector<RunPrefix> runs;  // sorted, duplicate-free
    bool truncated = false;       // node budget hit; result is partial
};

struct ExploreOptions {
    int32_t counter_bound = 1 << 30;   // configurations beyond this are cut
    size_t node_budget = 1'000'000;    // explored partial runs
};

/// Bounded exhaustive unfolding: all complete runs of m on w whose counters
/// stay within the bound. The result is a canonical (sorted) set, independent
/// of exploration order. Throws on letters outside the alphabet.
RunExploration run_prefixes(const CounterMachine& m, const Word& w, const ExploreOptions& opts = {});

/// A lasso-shaped run descriptor given by its state sequence: `stem` are the
/// states before the loop, `cycle` the states of the loop (nonempty).
struct LassoRunStates {
    std::vector<StateId> stem;
    std::vector<StateId> cycle;
};

/// Büchi: the cycle contains an accepting state. Muller: the set of states in
/// the cycle equals some member of the family. Each throws if the machine's
/// acceptance is of the other kind, or on an empty cycle.
bool buchi_accepts_lasso_run(const CounterMachine& m, const LassoRunStates& r);
bool muller_accepts_lasso_run(const CounterMachine& m, const LassoRunStates& r);

}  // namespace opn
