#pragma once

#include "opn/machine.hpp"

namespace opn {

/// Union of two Büchi machines over the same alphabet: a fresh initial state
/// copies the outgoing transitions of both originals, counters are padded to
/// max(k1,k2) with idle blind counters, and the fresh state is accepting iff
/// one of the original initials was. Sound for real-time machines because a
/// run commits to one operand with its first letter and counters of the other
/// operand never move.
CounterMachine union_machines(const CounterMachine& m1, const CounterMachine& m2);

/// Same, also reporting where each operand's states landed (fresh initial is
/// state 0; map1/map2 give the new index of each old state).
struct UnionResult {
    CounterMachine machine;
    std::vector<StateId> map1;
    std::vector<StateId> map2;
};
UnionResult union_machines_mapped(const CounterMachine& m1, const CounterMachine& m2);

/// Büchi intersection of a counter machine with a deterministic shape
/// automaton over the same alphabet, by the usual two-obligation flag
/// construction (flag 0: waiting for an accepting machine state; 1: waiting
/// for an accepting shape state; 2: both seen, reset next step). Guards,
/// effects and blindness are inherited from the machine; acceptance is Büchi
/// on flag-2 states. Only control-reachable product states are emitted.
struct ProductResult {
    CounterMachine machine;
    // For each product state: the machine state, shape state and flag it stands for.
    struct Origin {
        StateId machine_state;
        StateId shape_state;
        uint8_t flag;
    };
    std::vector<Origin> origins;
};
ProductResult product_with_shape(const CounterMachine& m, const ShapeAutomaton& shape);

}  // namespace opn
