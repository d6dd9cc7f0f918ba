#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "opn/machine.hpp"
#include "opn/coding.hpp"
#include "opn/simulate.hpp"

namespace opn {

/// Search bounds for lasso membership. counter_bound caps every counter
/// value during exploration, cycle_bound caps how many times the lasso's
/// loop is unrolled by the pumping search, node_budget caps explored nodes.
struct MemberBounds {
    int32_t counter_bound = 32;
    uint32_t cycle_bound = 8;
    size_t node_budget = 1'000'000;
};

enum class VerdictKind : uint8_t { Accept, Reject, Unknown };

/// Why a verdict stayed Unknown: Budget means a counter or node bound was
/// hit (raising counter_bound or node_budget may decide); Horizon means the
/// pumping search ran out of loop unrollings (raising cycle_bound may find
/// an accepting run).
enum class UnknownReason : uint8_t { None, Budget, Horizon };

/// An accepting run witness in lasso form. stem_configs holds the
/// configurations along the stem including the initial one; cycle_configs
/// the configurations after each loop step. When monotone is set the loop
/// returns to the same state with componentwise no-smaller counters (valid
/// for machines without zero tests); otherwise it returns to the exact
/// configuration.
struct RunWitness {
    LassoRun run;
    std::vector<Configuration> stem_configs;
    std::vector<Configuration> cycle_configs;
    bool monotone = false;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    UnknownReason reason = UnknownReason::None;
    std::optional<RunWitness> witness;
    MemberBounds bounds;
    bool clipped = false;        // some run hit the counter bound
    bool node_overflow = false;  // the node budget was exhausted
};

/// Decides (within bounds) whether the Büchi machine accepts the infinite
/// word spoke · cycle^ω. Accept always carries a replayable witness. Reject
/// is only reported when the bounded search provably exhausted all runs
/// (never clipped, never over budget) or the machine has no accepting
/// states. Everything else is Unknown. Throws on Muller acceptance or
/// letters outside the alphabet.
Verdict lasso_member(const CounterMachine& m, const LassoWord& w, const MemberBounds& bounds = {});

/// Replays a witness against the machine: stem from the initial
/// configuration, then 1 + extra_cycles copies of the loop, checking
/// connectedness, letters, guards, non-negativity, an accepting state inside
/// the loop, and the loop's return discipline (exact configuration, or
/// componentwise no-smaller counters for monotone witnesses on machines
/// without zero tests).
bool verify_witness(const CounterMachine& m, const LassoWord& w, const RunWitness& wit,
                    uint32_t extra_cycles = 3);

/// Options for the block-synchronized frontier search over coded words.
/// counter_cap == 0 means "twice the number of blocks". Dominance pruning
/// (drop entries whose counters are covered by an otherwise identical entry)
/// is off by default so that frontiers stay exact.
struct CodedMemberOptions {
    size_t node_budget = 1'000'000;
    uint8_t visit_cap = 8;
    int32_t counter_cap = 0;
    bool prune_dominated = false;
};

/// One surviving run-class at a block boundary: machine state, counter
/// values, accepting-state sightings at block boundaries so far (saturated
/// at visit_cap), and how many first-bank deposits this block made
/// (u_count). parents indexes the previous frontier's entries (block 1
/// entries have the single parent 0, the initial configuration).
struct FrontierEntry {
    StateId state = 0;
    std::vector<int32_t> counters;
    uint8_t visits = 0;
    uint32_t u_count = 0;
    std::vector<uint32_t> parents;
};

struct BlockFrontier {
    std::vector<FrontierEntry> entries;
};

struct CodedReport {
    std::vector<BlockFrontier> frontiers;  // one per completed block, post payload
    std::vector<size_t> survivors;         // entries per completed block
    std::vector<uint8_t> max_visits;       // max visits per completed block
    bool truncated = false;                // a budget or cap dropped branches
    uint32_t truncated_block = 0;          // 1-based first block that dropped a branch (0: none)
    int32_t counter_cap = 0;
};

/// Runs the machine over the flattened complete blocks of a coded prefix,
/// carrying the frontier of reachable (state, counters, visits, u_count)
/// classes from block boundary to block boundary. Throws when the prefix has
/// a decode error or a trailing partial block, or on foreign letters.
CodedReport coded_member(const CounterMachine& m, const CodedPrefix& prefix,
                         const CodedMemberOptions& opts = {});

/// Same over the first `blocks` blocks of the coded image of x.
CodedReport coded_member(const CounterMachine& m, const LassoWord& x, uint32_t blocks,
                         const CodedMemberOptions& opts = {});

/// A run of the simulated one-counter machine read off a frontier path:
/// states[i] and counters[i] after i steps (states[0] is the initial state,
/// counters[0] == 0).
struct ExtractedRun {
    std::vector<StateId> states;
    std::vector<int32_t> counters;
};

struct ExtractionResult {
    std::vector<ExtractedRun> runs;
    bool truncated = false;
};

/// Walks the frontier parent links backwards and projects every complete
/// path onto the simulated machine via the per-state bookkeeping: the state
/// stored at each block's payload and the first-bank deposit counts. Paths
/// through states without bookkeeping (escape states) are skipped, as are
/// paths whose final pending decrement leaves no legal continuation (the
/// next block cannot drain an empty counter, so they project to no run).
/// Results are deduplicated; at most `limit` distinct runs are returned.
ExtractionResult extract_runs(const BlockSimulator& b, const CodedReport& report, size_t limit = 10000);
ExtractionResult extract_runs(const SimulatorWithEscape& we, const CodedReport& report,
                              size_t limit = 10000);

/// True iff the extracted run is a legal run of `a` on x: counters start at
/// zero, never go negative, and every step matches some transition of `a`
/// (source, letter, target, effect, guard).
bool extracted_run_valid(const CounterMachine& a, const LassoWord& x, const ExtractedRun& r);

/// True iff the run contains a loop proving Büchi acceptance when repeated:
/// two positions p < p' past the spoke, aligned modulo the cycle length,
/// with equal states, equal counters (componentwise no-smaller suffices when
/// the counter is never zero-tested), and an accepting state strictly inside.
bool extracted_run_has_accepting_loop(const CounterMachine& a, const LassoWord& x,
                                      const ExtractedRun& r);

/// Bounded evidence about h(x) membership in the simulator's language.
/// Dead: the simulator part's frontier died at dead_block (sound: no run on
/// the coded image exists, so only an evading word could be accepted, and
/// coded images never evade). Accepting: a frontier path projects onto a
/// valid run of the simulated machine with an accepting loop (sound: the
/// coded image is accepted). Indecisive otherwise.
enum class CodedEvidenceKind : uint8_t { Accepting, Dead, Indecisive };

struct CodedEvidence {
    CodedEvidenceKind kind = CodedEvidenceKind::Indecisive;
    std::optional<ExtractedRun> accepting_run;
    uint32_t dead_block = 0;  // 1-based, for Dead
};

CodedEvidence coded_evidence(const BlockSimulator& b, const LassoWord& x, uint32_t blocks,
                             const CodedMemberOptions& opts = {});
CodedEvidence coded_evidence(const SimulatorWithEscape& we, const LassoWord& x, uint32_t blocks,
                             const CodedMemberOptions& opts = {});

}  // namespace opn
