#include "opn/compose.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "opn/semantics.hpp"

namespace opn {

namespace {

// Widens guard/effect vectors to k counters; new counters are untouched and
// untested, so they stay at 0 and never block a step.
Transition pad_transition(const Transition& t, uint32_t k) {
    Transition out = t;
    out.guards.resize(k, GuardTest::Any);
    out.effects.resize(k, 0);
    return out;
}

// Compositions only match letters by character, so the declared order of the
// letters is irrelevant; compare the sets.
bool same_letter_set(const Alphabet& a, const Alphabet& b) {
    std::string x = a.letters();
    std::string y = b.letters();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

}  // namespace

UnionResult union_machines_mapped(const CounterMachine& m1, const CounterMachine& m2) {
    if (!same_letter_set(m1.alphabet, m2.alphabet))
        throw std::invalid_argument("union: operand alphabets differ");
    if (!m1.acceptance.is_buchi() || !m2.acceptance.is_buchi())
        throw std::invalid_argument("union: both operands must be Buchi");
    if (!validate(m1).empty() || !validate(m2).empty())
        throw std::invalid_argument("union: operand fails validation");

    uint32_t k = std::max(m1.num_counters, m2.num_counters);
    UnionResult result;
    CounterMachine& u = result.machine;
    u.alphabet = m1.alphabet;
    u.num_counters = k;
    u.blind.assign(k, true);
    // A counter zero-tested by either operand cannot be declared blind.
    for (uint32_t c = 0; c < k; ++c) {
        bool b1 = c >= m1.num_counters || m1.blind[c];
        bool b2 = c >= m2.num_counters || m2.blind[c];
        u.blind[c] = b1 && b2;
    }

    u.state_names.push_back("u0");
    auto copy_states = [&](const CounterMachine& m, const char* prefix) {
        std::vector<StateId> map(m.num_states());
        for (size_t i = 0; i < m.num_states(); ++i) {
            map[i] = static_cast<StateId>(u.state_names.size());
            u.state_names.push_back(prefix + m.state_names[i]);
        }
        return map;
    };
    result.map1 = copy_states(m1, "l.");
    result.map2 = copy_states(m2, "r.");
    u.initial = 0;

    auto copy_transitions = [&](const CounterMachine& m, const std::vector<StateId>& map) {
        for (const Transition& t : m.transitions) {
            Transition nt = pad_transition(t, k);
            nt.src = map[t.src];
            nt.dst = map[t.dst];
            u.transitions.push_back(nt);
            if (t.src == m.initial) {
                Transition from_fresh = nt;
                from_fresh.src = 0;
                u.transitions.push_back(from_fresh);
            }
        }
    };
    copy_transitions(m1, result.map1);
    copy_transitions(m2, result.map2);

    std::vector<StateId> f;
    for (StateId q : m1.acceptance.buchi) f.push_back(result.map1[q]);
    for (StateId q : m2.acceptance.buchi) f.push_back(result.map2[q]);
    if (m1.acceptance.buchi_contains(m1.initial) || m2.acceptance.buchi_contains(m2.initial))
        f.push_back(0);
    u.acceptance = Acceptance::buchi_set(std::move(f));
    return result;
}

CounterMachine union_machines(const CounterMachine& m1, const CounterMachine& m2) {
    return union_machines_mapped(m1, m2).machine;
}

ProductResult product_with_shape(const CounterMachine& m, const ShapeAutomaton& shape) {
    if (!same_letter_set(m.alphabet, shape.alphabet))
        throw std::invalid_argument("product: machine and shape alphabets differ");
    if (!m.acceptance.is_buchi())
        throw std::invalid_argument("product: machine must be Buchi");

    ProductResult result;
    CounterMachine& p = result.machine;
    p.alphabet = m.alphabet;
    p.num_counters = m.num_counters;
    p.blind = m.blind;

    using Key = std::tuple<StateId, StateId, uint8_t>;
    std::map<Key, StateId> index;
    std::deque<Key> queue;
    auto intern = [&](StateId qm, StateId qs, uint8_t flag) {
        Key key{qm, qs, flag};
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        StateId id = static_cast<StateId>(p.state_names.size());
        index.emplace(key, id);
        p.state_names.push_back(m.state_names[qm] + "|" + shape.state_names[qs] + "|" +
                                std::to_string(flag));
        result.origins.push_back({qm, qs, flag});
        queue.push_back(key);
        return id;
    };

    p.initial = intern(m.initial, shape.initial, 0);
    while (!queue.empty()) {
        auto [qm, qs, flag] = queue.front();
        queue.pop_front();
        StateId src = index.at({qm, qs, flag});
        for (const Transition& t : m.transitions) {
            if (t.src != qm) continue;
            auto qs2 = shape.step(qs, t.letter);
            if (!qs2) continue;
            uint8_t next_flag = flag;
            if (flag == 0 && m.acceptance.buchi_contains(t.dst))
                next_flag = 1;
            else if (flag == 1 && shape.is_accepting(*qs2))
                next_flag = 2;
            else if (flag == 2)
                next_flag = 0;
            Transition nt = t;
            nt.src = src;
            nt.dst = intern(t.dst, *qs2, next_flag);
            p.transitions.push_back(nt);
        }
    }

    std::vector<StateId> f;
    for (size_t i = 0; i < result.origins.size(); ++i)
        if (result.origins[i].flag == 2) f.push_back(static_cast<StateId>(i));
    p.acceptance = Acceptance::buchi_set(std::move(f));
    return result;
}

}  // namespace opn
