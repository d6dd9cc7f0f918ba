#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opn/alphabet.hpp"

namespace opn {

using StateId = uint32_t;

/// Per-counter guard of a transition. `Any` matches every value; it is the
/// only test allowed on a blind counter. `Zero`/`Positive` are exact tests
/// and may only appear on counters that are not blind.
enum class GuardTest : uint8_t { Zero, Positive, Any };

/// Counter effect, one of -1/0/+1 per counter. A transition whose guard on
/// counter m is Zero may not decrement counter m (the run would go negative).
using Effect = int8_t;

struct Transition {
    StateId src = 0;
    Letter letter = 0;
    std::vector<GuardTest> guards;   // length k
    std::vector<Effect> effects;     // length k, values in {-1,0,+1}
    StateId dst = 0;

    bool operator==(const Transition& o) const {
        return src == o.src && letter == o.letter && guards == o.guards &&
               effects == o.effects && dst == o.dst;
    }
};

/// Büchi: some state of `buchi` recurs. Muller: the set of states recurring
/// equals one member of `muller` exactly.
struct Acceptance {
    enum class Kind : uint8_t { Buchi, Muller };
    Kind kind = Kind::Buchi;
    std::vector<StateId> buchi;                // sorted, unique
    std::vector<std::vector<StateId>> muller;  // each sorted, unique

    static Acceptance buchi_set(std::vector<StateId> f);
    static Acceptance muller_family(std::vector<std::vector<StateId>> fam);

    bool is_buchi() const { return kind == Kind::Buchi; }
    bool buchi_contains(StateId q) const;

    bool operator==(const Acceptance& o) const {
        return kind == o.kind && buchi == o.buchi && muller == o.muller;
    }
};

/// Real-time machine with k counters: every transition consumes exactly one
/// letter. Runs start in `initial` with all counters at 0; a step is enabled
/// when the guard matches the current counter values and no counter would go
/// negative. Counters flagged blind can never be tested, only moved — so a
/// step of a blind machine enabled at some counter values is enabled at all
/// componentwise-larger ones.
struct CounterMachine {
    Alphabet alphabet;
    uint32_t num_counters = 0;
    std::vector<bool> blind;  // length num_counters
    std::vector<std::string> state_names;
    StateId initial = 0;
    Acceptance acceptance;
    std::vector<Transition> transitions;

    size_t num_states() const { return state_names.size(); }
    bool all_blind() const;

    bool operator==(const CounterMachine& o) const {
        return alphabet == o.alphabet && num_counters == o.num_counters && blind == o.blind &&
               state_names == o.state_names && initial == o.initial &&
               acceptance == o.acceptance && transitions == o.transitions;
    }
};

/// A point of a run: control state plus current counter values (all >= 0).
struct Configuration {
    StateId state = 0;
    std::vector<int32_t> counters;

    bool operator==(const Configuration& o) const {
        return state == o.state && counters == o.counters;
    }
    bool operator<(const Configuration& o) const {
        if (state != o.state) return state < o.state;
        return counters < o.counters;
    }
};

/// Deterministic finite-state automaton with a Büchi set, used as the shape
/// restriction in products. The transition function may be partial; a missing
/// entry kills the run.
struct ShapeAutomaton {
    Alphabet alphabet;
    std::vector<std::string> state_names;
    StateId initial = 0;
    std::vector<StateId> accepting;  // sorted, unique

    /// step_table[state * alphabet.size() + letter_index], -1 = no move.
    std::vector<int32_t> step_table;

    size_t num_states() const { return state_names.size(); }
    std::optional<StateId> step(StateId q, Letter a) const;
    bool is_accepting(StateId q) const;

    /// Deterministic acceptance of an ultimately periodic word.
    bool accepts_lasso(const LassoWord& w) const;
};

/// One finding of validate(); `transition` is absent for machine-level issues.
struct Diagnostic {
    std::optional<size_t> transition;  // index into transitions
    std::string message;
};

}  // namespace opn
