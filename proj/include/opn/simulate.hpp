#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "opn/compose.hpp"
#include "opn/machine.hpp"
#include "opn/coding.hpp"

namespace opn {

/// Control-state bookkeeping of the block simulator. One block of the coded
/// word is processed as: separator, a zero-run, one payload letter. During
/// the zero-run one counter pair drains the previous block's deposit while
/// the other pair banks the run length, split as |u|+|v| with the split point
/// tied to the previously chosen transition's counter effect. Zones:
///   ZoneFirst  - draining pair on its first counter, banking pair on its first
///   ZoneSecond - both pairs switched to their second counter
///   IdleDone   - the single idle zero (no decrement) was consumed; payload due
/// Block 1 is special: nothing to drain, |u|=0 is forced, every zero banks on
/// the second counter of the banking pair.
enum class PhaseMode : uint8_t {
    Start,
    Block1Sep,
    Block1Zeros,
    ZoneFirst,
    ZoneSecond,
    IdleDone,
    AfterPayload,
};

/// Counter roles per block parity: odd blocks (block 1, 3, ...) bank the
/// zero-run into the first counter pair (indices 0, 1) while draining the
/// second pair (2, 3); even blocks swap the pairs. Within a pair the bank
/// fills "first" then "second", and the drain empties in the same order.
constexpr int drain_first_counter(bool even_block) { return even_block ? 0 : 2; }
constexpr int drain_second_counter(bool even_block) { return even_block ? 1 : 3; }
constexpr int bank_first_counter(bool even_block) { return even_block ? 2 : 0; }
constexpr int bank_second_counter(bool even_block) { return even_block ? 3 : 1; }

struct SimulatorStateInfo {
    PhaseMode mode;
    bool even_block;   // parity of the current (or just finished) block
    StateId a_state;   // stored state of the simulated machine
    int8_t stored_n;   // counter effect chosen at the last payload
    bool u_zero;       // no first-counter bank deposit yet in this block
    bool mark;         // stored state was accepting when stored
};

/// Four-blind-counter machine simulating a 1-counter machine on coded words:
/// a coded word is accepted iff it codes a word of the simulated language (or
/// deviates in the narrow ways the counters cannot detect). Product with the
/// shape automaton is part of the construction. `info` annotates every state
/// of `machine`; `a` is a copy of the simulated machine.
struct BlockSimulator {
    CounterMachine machine;
    std::vector<SimulatorStateInfo> info;
    CounterMachine a;
};

/// Builds the simulator for a Büchi machine with one zero-testable counter
/// over a payload alphabet free of reserved letters. Errors when `a` is not
/// of that form or fails validation.
BlockSimulator build_block_simulator(const CounterMachine& a);

/// One-blind-counter Büchi machine over the coded alphabet accepting the
/// words that evade the coding: either the first four letters do not spell
/// A-0-payload-B, or some segment sep 0^n a sep' 0^m b with opposite
/// separators and 1 <= m <= n occurs (the counter climbs the first zero-run
/// and descends the second; non-negativity is exactly m <= n).
CounterMachine build_escape_machine(const Alphabet& sigma);

/// Union of the block simulator with the (padded) escape machine: accepts
/// the coded image of the simulated language together with every evading
/// word. sim_state maps union states back into sim.info (-1 for escape and
/// fresh states).
struct SimulatorWithEscape {
    CounterMachine machine;
    BlockSimulator sim;
    std::vector<int32_t> sim_state;  // union state -> index into sim.info, or -1

    const SimulatorStateInfo* info_of(StateId q) const {
        int32_t i = sim_state[q];
        return i < 0 ? nullptr : &sim.info[static_cast<size_t>(i)];
    }
};
SimulatorWithEscape build_simulator_with_escape(const CounterMachine& a);

/// A run of a machine on a lasso word, itself in lasso form: transition
/// indices for the stem, then for the loop.
struct LassoRun {
    std::vector<size_t> stem_transitions;
    std::vector<size_t> cycle_transitions;
};

/// Finitely presented run of the block simulator on the coded image of x,
/// one line per block: the bank split u/v, the chosen transition of the
/// simulated machine with its effect and target, and whether the target is
/// accepting. Checkable transition-by-transition.
struct CertificateBlock {
    uint32_t u;            // first-counter bank deposits = counter before this step
    uint32_t v;            // second-counter deposits; u + v = block index
    size_t a_transition;   // index into the simulated machine's transitions
    int8_t effect_n;
    StateId q_after;
    bool f_visit;
};

struct RunCertificate {
    uint32_t horizon = 0;
    std::vector<CertificateBlock> blocks;  // horizon entries
};

/// Unrolls an accepting (or any valid) run of `a` on x to `horizon` steps and
/// reads the certificate off it: u of block n is the counter value before
/// step n. Throws when the run is not a valid run of `a` on x.
RunCertificate build_canonical_certificate(const CounterMachine& a, const LassoRun& run,
                                           const LassoWord& x, uint32_t horizon);

/// True iff the certificate's block schema expands to a legal run of the
/// simulator on the coded image of x: every per-letter step exists in the
/// machine, counters never go negative, and the accepting mark sits exactly
/// where claimed. Independent of the frontier search: the expansion is
/// replayed letter by letter against the machine's transitions.
bool check_certificate(const BlockSimulator& b, const LassoWord& x, const RunCertificate& cert);

}  // namespace opn
