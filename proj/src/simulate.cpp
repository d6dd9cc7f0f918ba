#include "opn/simulate.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "opn/semantics.hpp"

namespace opn {

namespace {

using opn::bank_first_counter;
using opn::bank_second_counter;
using opn::drain_first_counter;
using opn::drain_second_counter;

struct PhaseKey {
    PhaseMode mode;
    bool even_block;
    StateId a_state;
    int8_t stored_n;
    bool u_zero;
    bool mark;

    auto tie() const { return std::tuple(mode, even_block, a_state, stored_n, u_zero, mark); }
    bool operator<(const PhaseKey& o) const { return tie() < o.tie(); }
};

std::string phase_name(const PhaseKey& k) {
    switch (k.mode) {
        case PhaseMode::Start: return "start";
        case PhaseMode::Block1Sep: return "b1.sep";
        case PhaseMode::Block1Zeros: return "b1.zeros";
        default: break;
    }
    std::string s = k.even_block ? "E." : "O.";
    switch (k.mode) {
        case PhaseMode::ZoneFirst: s += "zf"; break;
        case PhaseMode::ZoneSecond: s += "zs"; break;
        case PhaseMode::IdleDone: s += "idle"; break;
        case PhaseMode::AfterPayload: s += "pay"; break;
        default: break;
    }
    s += ".q" + std::to_string(k.a_state);
    s += ".n";
    s += (k.stored_n < 0 ? "m1" : (k.stored_n > 0 ? "p1" : "0"));
    s += (k.u_zero ? ".u0" : ".u+");
    if (k.mark) s += ".F";
    return s;
}

bool guard_allows(GuardTest g, bool counter_is_zero) {
    switch (g) {
        case GuardTest::Zero: return counter_is_zero;
        case GuardTest::Positive: return !counter_is_zero;
        case GuardTest::Any: return true;
    }
    return false;
}

std::vector<int8_t> move4(std::initializer_list<std::pair<int, int>> moves) {
    std::vector<int8_t> e(4, 0);
    for (auto [idx, d] : moves) e[static_cast<size_t>(idx)] = static_cast<int8_t>(d);
    return e;
}

}  // namespace

BlockSimulator build_block_simulator(const CounterMachine& a) {
    if (a.num_counters != 1)
        throw std::invalid_argument("block simulator: the simulated machine must have exactly one counter");
    if (!a.acceptance.is_buchi())
        throw std::invalid_argument("block simulator: the simulated machine must use Buchi acceptance");
    {
        auto issues = validate(a);
        if (!issues.empty())
            throw std::invalid_argument("block simulator: invalid input machine: " + issues.front().message);
    }

    const Alphabet gamma = coded_alphabet(a.alphabet);

    CounterMachine phase;
    phase.alphabet = gamma;
    phase.num_counters = 4;
    phase.blind.assign(4, true);
    phase.acceptance.kind = Acceptance::Kind::Buchi;

    std::map<PhaseKey, StateId> index;
    std::deque<PhaseKey> work;
    std::vector<PhaseKey> keys;

    auto intern = [&](PhaseKey k) -> StateId {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        StateId id = static_cast<StateId>(keys.size());
        index.emplace(k, id);
        keys.push_back(k);
        phase.state_names.push_back(phase_name(k));
        work.push_back(k);
        return id;
    };

    const PhaseKey start{PhaseMode::Start, false, a.initial, 0, true, false};
    phase.initial = intern(start);

    const std::vector<GuardTest> any4(4, GuardTest::Any);

    auto add_edge = [&](StateId src, Letter letter, std::vector<int8_t> eff, PhaseKey dst) {
        phase.transitions.push_back(Transition{src, letter, any4, std::move(eff), intern(dst)});
    };

    auto add_payload_edges = [&](StateId src, const PhaseKey& k) {
        // The banked first-counter deposits of the current block equal the
        // simulated counter before this step; its zero-ness is u_zero.
        for (const Transition& t : a.transitions) {
            if (t.src != k.a_state) continue;
            if (!guard_allows(t.guards[0], k.u_zero)) continue;
            PhaseKey dst{PhaseMode::AfterPayload, k.even_block, t.dst, t.effects[0], true,
                         a.acceptance.buchi_contains(t.dst)};
            add_edge(src, t.letter, move4({}), dst);
        }
    };

    while (!work.empty()) {
        PhaseKey k = work.front();
        work.pop_front();
        StateId src = index.at(k);
        const bool e = k.even_block;

        switch (k.mode) {
            case PhaseMode::Start:
                add_edge(src, kSepOdd, move4({}), PhaseKey{PhaseMode::Block1Sep, false, a.initial, 0, true, false});
                break;
            case PhaseMode::Block1Sep:
                // Block 1 banks every zero on the second counter of the first pair.
                add_edge(src, kZero, move4({{bank_second_counter(false), +1}}),
                         PhaseKey{PhaseMode::Block1Zeros, false, a.initial, 0, true, false});
                break;
            case PhaseMode::Block1Zeros:
                add_edge(src, kZero, move4({{bank_second_counter(false), +1}}), k);
                add_payload_edges(src, k);
                break;
            case PhaseMode::ZoneFirst: {
                // Drain the first counter of the old pair while banking the
                // first counter of the new pair.
                PhaseKey self = k;
                self.u_zero = false;
                add_edge(src, kZero, move4({{drain_first_counter(e), -1}, {bank_first_counter(e), +1}}), self);
                // The bridge to the second zone depends on the stored effect:
                // the bank switch happens one step after (+1), together with
                // (0), or one step before (-1) the drain switch.
                PhaseKey second = k;
                second.mode = PhaseMode::ZoneSecond;
                if (k.stored_n == 0) {
                    add_edge(src, kZero, move4({{drain_second_counter(e), -1}, {bank_second_counter(e), +1}}), second);
                } else if (k.stored_n > 0) {
                    second.u_zero = false;
                    add_edge(src, kZero, move4({{drain_second_counter(e), -1}, {bank_first_counter(e), +1}}), second);
                } else {
                    add_edge(src, kZero, move4({{drain_first_counter(e), -1}, {bank_second_counter(e), +1}}), second);
                }
                break;
            }
            case PhaseMode::ZoneSecond: {
                add_edge(src, kZero, move4({{drain_second_counter(e), -1}, {bank_second_counter(e), +1}}), k);
                PhaseKey idle = k;
                idle.mode = PhaseMode::IdleDone;
                add_edge(src, kZero, move4({{bank_second_counter(e), +1}}), idle);
                break;
            }
            case PhaseMode::IdleDone:
                add_payload_edges(src, k);
                break;
            case PhaseMode::AfterPayload: {
                // Parity flips; the freshly banked pair becomes the draining one.
                PhaseKey next{PhaseMode::ZoneFirst, !e, k.a_state, k.stored_n, true, k.mark};
                add_edge(src, e ? kSepOdd : kSepEven, move4({}), next);
                break;
            }
        }
    }

    phase.acceptance.buchi.clear();
    for (StateId q = 0; q < keys.size(); ++q)
        if (keys[q].mark) phase.acceptance.buchi.push_back(q);

    {
        auto issues = validate(phase);
        if (!issues.empty())
            throw std::logic_error("block simulator: internal construction error: " + issues.front().message);
    }

    ShapeAutomaton shape = shape_automaton(a.alphabet);
    ProductResult prod = product_with_shape(phase, shape);

    BlockSimulator out;
    out.machine = std::move(prod.machine);
    out.a = a;
    out.info.reserve(prod.origins.size());
    for (const auto& org : prod.origins) {
        const PhaseKey& pk = keys[org.machine_state];
        out.info.push_back(SimulatorStateInfo{pk.mode, pk.even_block, pk.a_state, pk.stored_n,
                                              pk.u_zero, pk.mark});
    }
    return out;
}

CounterMachine build_escape_machine(const Alphabet& sigma) {
    const Alphabet gamma = coded_alphabet(sigma);

    // Finite-state part: the first four letters do not fit sep-zero-payload-sep.
    CounterMachine m1;
    m1.alphabet = gamma;
    m1.num_counters = 0;
    m1.state_names = {"p0", "p1", "p2", "p3", "acc"};
    m1.initial = 0;
    m1.acceptance = Acceptance{Acceptance::Kind::Buchi, {4}, {}};
    auto flat = [&](StateId s, Letter c, StateId d) {
        m1.transitions.push_back(Transition{s, c, {}, {}, d});
    };
    for (size_t i = 0; i < gamma.size(); ++i) {
        Letter c = gamma.at(i);
        StateId p0_to = (c == kSepOdd) ? 1u : 4u;
        flat(0, c, p0_to);
        StateId p1_to = (c == kZero) ? 2u : 4u;
        flat(1, c, p1_to);
        if (is_payload_letter(c))
            flat(2, c, 3);
        else
            flat(2, c, 4);
        if (c != kSepEven) flat(3, c, 4);  // a fitting fourth letter ends this branch
        flat(4, c, 4);
    }

    // One-blind-counter part: some maximal zero-run after a separator is
    // followed (after one payload letter and the opposite separator) by a
    // zero-run at most as long. The counter climbs the first run and descends
    // the second; the descent needs at least one zero and cannot exceed the
    // climb.
    CounterMachine m2;
    m2.alphabet = gamma;
    m2.num_counters = 1;
    m2.blind = {true};
    m2.state_names = {"skip", "a.z0", "a.zs", "a.pay", "b.d0", "b.ds",
                      "b.z0", "b.zs", "b.pay", "a.d0", "a.ds", "acc"};
    m2.initial = 0;
    m2.acceptance = Acceptance{Acceptance::Kind::Buchi, {11}, {}};
    auto e2 = [&](StateId s, Letter c, int8_t d, StateId t) {
        m2.transitions.push_back(Transition{s, c, {GuardTest::Any}, {d}, t});
    };
    for (size_t i = 0; i < gamma.size(); ++i) {
        Letter c = gamma.at(i);
        e2(0, c, 0, 0);
        if (is_payload_letter(c)) {
            e2(2, c, 0, 3);    // payload ends the climbed run
            e2(5, c, 0, 11);   // payload ends the descended run: witness complete
            e2(7, c, 0, 8);
            e2(10, c, 0, 11);
        }
        e2(11, c, 0, 11);
    }
    e2(0, kSepOdd, 0, 1);
    e2(0, kSepEven, 0, 6);
    e2(1, kZero, +1, 2);
    e2(2, kZero, +1, 2);
    e2(3, kSepEven, 0, 4);
    e2(4, kZero, -1, 5);
    e2(5, kZero, -1, 5);
    e2(6, kZero, +1, 7);
    e2(7, kZero, +1, 7);
    e2(8, kSepOdd, 0, 9);
    e2(9, kZero, -1, 10);
    e2(10, kZero, -1, 10);

    return union_machines(m1, m2);
}

SimulatorWithEscape build_simulator_with_escape(const CounterMachine& a) {
    SimulatorWithEscape out;
    out.sim = build_block_simulator(a);
    CounterMachine esc = build_escape_machine(a.alphabet);
    UnionResult u = union_machines_mapped(out.sim.machine, esc);
    out.machine = std::move(u.machine);
    out.sim_state.assign(out.machine.num_states(), -1);
    for (StateId q = 0; q < out.sim.machine.num_states(); ++q)
        out.sim_state[u.map1[q]] = static_cast<int32_t>(q);
    return out;
}

RunCertificate build_canonical_certificate(const CounterMachine& a, const LassoRun& run,
                                           const LassoWord& x, uint32_t horizon) {
    if (a.num_counters != 1)
        throw std::invalid_argument("certificate: the machine must have exactly one counter");
    const size_t p = run.stem_transitions.size();
    const size_t cyc = run.cycle_transitions.size();
    if (horizon > p && cyc == 0)
        throw std::invalid_argument("certificate: run has an empty cycle but the horizon needs one");

    RunCertificate cert;
    cert.horizon = horizon;
    Configuration c = initial_configuration(a);
    for (uint32_t n = 1; n <= horizon; ++n) {
        size_t idx = (n <= p) ? run.stem_transitions[n - 1] : run.cycle_transitions[(n - 1 - p) % cyc];
        if (idx >= a.transitions.size()) throw std::invalid_argument("certificate: transition index out of range");
        const Transition& t = a.transitions[idx];
        int32_t val = c.counters[0];
        if (t.src != c.state) throw std::invalid_argument("certificate: run is not connected");
        if (t.letter != x.at(n - 1)) throw std::invalid_argument("certificate: run letter mismatch");
        if (!guard_allows(t.guards[0], val == 0))
            throw std::invalid_argument("certificate: run violates a counter guard");
        if (val + t.effects[0] < 0) throw std::invalid_argument("certificate: run drives the counter negative");
        cert.blocks.push_back(CertificateBlock{static_cast<uint32_t>(val),
                                               n - static_cast<uint32_t>(val), idx, t.effects[0],
                                               t.dst, a.acceptance.buchi_contains(t.dst)});
        c.state = t.dst;
        c.counters[0] = val + t.effects[0];
    }
    return cert;
}

bool check_certificate(const BlockSimulator& b, const LassoWord& x, const RunCertificate& cert) {
    const CounterMachine& a = b.a;
    if (cert.blocks.size() != cert.horizon) return false;
    if (cert.horizon == 0) return true;

    // Stage 1: the block schema must describe a connected legal run of the
    // simulated machine, with the banked splits following its counter.
    StateId q_prev = a.initial;
    uint32_t expect_u = 0;
    for (uint32_t n = 1; n <= cert.horizon; ++n) {
        const CertificateBlock& cb = cert.blocks[n - 1];
        if (cb.u != expect_u) return false;
        if (cb.u + cb.v != n || cb.v < 1) return false;
        if (cb.a_transition >= a.transitions.size()) return false;
        const Transition& t = a.transitions[cb.a_transition];
        if (t.src != q_prev || t.letter != x.at(n - 1)) return false;
        if (t.effects[0] != cb.effect_n || t.dst != cb.q_after) return false;
        if (!guard_allows(t.guards[0], cb.u == 0)) return false;
        if (cb.f_visit != a.acceptance.buchi_contains(cb.q_after)) return false;
        int64_t next_u = static_cast<int64_t>(cb.u) + cb.effect_n;
        if (next_u < 0) return false;
        expect_u = static_cast<uint32_t>(next_u);
        q_prev = cb.q_after;
    }

    // Stage 2: expand the schema into per-letter counter moves and replay it
    // against the machine, tracking the set of states compatible with every
    // step. Payload positions must additionally carry the claimed stored
    // state, effect and accepting mark.
    struct Step {
        Letter letter;
        std::vector<int8_t> delta;
        bool payload = false;
        StateId q = 0;
        int8_t n_eff = 0;
        bool f_visit = false;
    };
    std::vector<Step> steps;
    for (uint32_t n = 1; n <= cert.horizon; ++n) {
        const CertificateBlock& cb = cert.blocks[n - 1];
        steps.push_back(Step{separator_for_block(n), std::vector<int8_t>(4, 0)});
        const bool even = (n % 2 == 0);
        const uint32_t k = (n == 1) ? 0 : cert.blocks[n - 2].u;  // drain size of the first old counter
        for (uint32_t pos = 1; pos <= n; ++pos) {
            std::vector<int8_t> d(4, 0);
            if (n > 1) {
                if (pos <= k)
                    d[static_cast<size_t>(drain_first_counter(even))] = -1;
                else if (pos <= n - 1)
                    d[static_cast<size_t>(drain_second_counter(even))] = -1;
            }
            if (pos <= cb.u)
                d[static_cast<size_t>(bank_first_counter(even))] = +1;
            else
                d[static_cast<size_t>(bank_second_counter(even))] = +1;
            steps.push_back(Step{kZero, std::move(d)});
        }
        steps.push_back(Step{x.at(n - 1), std::vector<int8_t>(4, 0), true, cb.q_after, cb.effect_n,
                             cb.f_visit});
    }

    std::vector<int32_t> cum(4, 0);
    for (const Step& s : steps)
        for (size_t c = 0; c < 4; ++c) {
            cum[c] += s.delta[c];
            if (cum[c] < 0) return false;
        }

    std::vector<char> in_set(b.machine.num_states(), 0);
    in_set[b.machine.initial] = 1;
    for (const Step& s : steps) {
        std::vector<char> next(b.machine.num_states(), 0);
        bool any = false;
        for (const Transition& t : b.machine.transitions) {
            if (!in_set[t.src] || t.letter != s.letter) continue;
            if (t.effects != s.delta) continue;
            if (s.payload) {
                const SimulatorStateInfo& inf = b.info[t.dst];
                if (inf.a_state != s.q || inf.stored_n != s.n_eff || inf.mark != s.f_visit) continue;
            }
            next[t.dst] = 1;
            any = true;
        }
        if (!any) return false;
        in_set.swap(next);
    }
    return true;
}

}  // namespace opn
