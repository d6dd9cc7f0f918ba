#include "opn/semantics.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace opn {

std::vector<Diagnostic> validate(const CounterMachine& m) {
    std::vector<Diagnostic> out;
    auto issue = [&](std::optional<size_t> t, std::string msg) {
        out.push_back(Diagnostic{t, std::move(msg)});
    };

    if (m.alphabet.empty()) issue(std::nullopt, "alphabet is empty");
    if (m.blind.size() != m.num_counters)
        issue(std::nullopt, "blind flag vector does not have one entry per counter");
    if (m.state_names.empty())
        issue(std::nullopt, "machine has no states");
    else if (m.initial >= m.num_states())
        issue(std::nullopt, "initial state out of range");

    auto check_state_set = [&](const std::vector<StateId>& set, const char* what) {
        for (StateId q : set) {
            if (q >= m.num_states())
                issue(std::nullopt, std::string(what) + " references undeclared state");
        }
    };
    if (m.acceptance.is_buchi()) {
        check_state_set(m.acceptance.buchi, "accepting set");
    } else {
        for (const auto& set : m.acceptance.muller) check_state_set(set, "muller set");
    }

    for (size_t i = 0; i < m.transitions.size(); ++i) {
        const Transition& t = m.transitions[i];
        if (t.src >= m.num_states()) issue(i, "source state out of range");
        if (t.dst >= m.num_states()) issue(i, "target state out of range");
        if (!m.alphabet.contains(t.letter))
            issue(i, std::string("letter '") + t.letter + "' not in alphabet");
        if (t.guards.size() != m.num_counters)
            issue(i, "guard arity does not match counter count");
        if (t.effects.size() != m.num_counters)
            issue(i, "effect arity does not match counter count");
        size_t k = std::min(t.guards.size(), t.effects.size());
        for (size_t c = 0; c < k && c < m.blind.size(); ++c) {
            if (m.blind[c] && t.guards[c] != GuardTest::Any)
                issue(i, "blind counter " + std::to_string(c) + " carries a zero/positive test");
            if (t.guards[c] == GuardTest::Zero && t.effects[c] < 0)
                issue(i, "counter " + std::to_string(c) +
                             " tested for zero cannot be decremented");
            if (t.effects[c] < -1 || t.effects[c] > 1)
                issue(i, "effect on counter " + std::to_string(c) + " outside {-1,0,+1}");
        }
    }
    return out;
}

Configuration initial_configuration(const CounterMachine& m) {
    Configuration c;
    c.state = m.initial;
    c.counters.assign(m.num_counters, 0);
    return c;
}

bool guard_matches(const Transition& t, const Configuration& c) {
    for (size_t i = 0; i < t.guards.size(); ++i) {
        switch (t.guards[i]) {
            case GuardTest::Zero:
                if (c.counters[i] != 0) return false;
                break;
            case GuardTest::Positive:
                if (c.counters[i] <= 0) return false;
                break;
            case GuardTest::Any:
                break;
        }
    }
    return true;
}

bool apply_effect(const Transition& t, const Configuration& from, Configuration& to) {
    to.state = t.dst;
    to.counters = from.counters;
    for (size_t i = 0; i < t.effects.size(); ++i) {
        to.counters[i] += t.effects[i];
        if (to.counters[i] < 0) return false;
    }
    return true;
}

std::vector<Configuration> successors(const CounterMachine& m, const Configuration& c, Letter a) {
    if (!m.alphabet.contains(a))
        throw std::invalid_argument(std::string("letter '") + a + "' not in machine alphabet");
    std::vector<Configuration> out;
    Configuration next;
    for (const Transition& t : m.transitions) {
        if (t.src != c.state || t.letter != a) continue;
        if (!guard_matches(t, c)) continue;
        if (!apply_effect(t, c, next)) continue;
        out.push_back(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RunExploration run_prefixes(const CounterMachine& m, const Word& w, const ExploreOptions& opts) {
    for (Letter a : w) {
        if (!m.alphabet.contains(a))
            throw std::invalid_argument(std::string("letter '") + a + "' not in machine alphabet");
    }

    RunExploration result;
    // Breadth-first over partial runs; each node owns its configuration
    // sequence. Words here are short, so the copying is fine.
    std::deque<std::vector<Configuration>> frontier;
    frontier.push_back({initial_configuration(m)});
    size_t explored = 1;

    for (size_t pos = 0; pos < w.size(); ++pos) {
        std::deque<std::vector<Configuration>> next_frontier;
        for (const auto& run : frontier) {
            for (const Configuration& succ : successors(m, run.back(), w[pos])) {
                if (!succ.counters.empty() &&
                    *std::max_element(succ.counters.begin(), succ.counters.end()) >
                        opts.counter_bound)
                    continue;
                if (++explored > opts.node_budget) {
                    result.truncated = true;
                    goto collect;
                }
                auto extended = run;
                extended.push_back(succ);
                next_frontier.push_back(std::move(extended));
            }
        }
        frontier = std::move(next_frontier);
    }

collect:
    for (auto& run : frontier) {
        if (run.size() != w.size() + 1) continue;  // only complete runs
        RunPrefix rp;
        rp.consumed = w;
        if (m.acceptance.is_buchi()) {
            for (const Configuration& c : run)
                if (m.acceptance.buchi_contains(c.state)) ++rp.accept_visits;
        }
        rp.configurations = std::move(run);
        result.runs.push_back(std::move(rp));
    }
    std::sort(result.runs.begin(), result.runs.end());
    result.runs.erase(std::unique(result.runs.begin(), result.runs.end()), result.runs.end());
    return result;
}

namespace {

void require_nonempty_cycle(const LassoRunStates& r) {
    if (r.cycle.empty()) throw std::invalid_argument("lasso run: empty cycle");
}

}  // namespace

bool buchi_accepts_lasso_run(const CounterMachine& m, const LassoRunStates& r) {
    if (!m.acceptance.is_buchi())
        throw std::invalid_argument("buchi_accepts_lasso_run on a Muller machine");
    require_nonempty_cycle(r);
    return std::any_of(r.cycle.begin(), r.cycle.end(),
                       [&](StateId q) { return m.acceptance.buchi_contains(q); });
}

bool muller_accepts_lasso_run(const CounterMachine& m, const LassoRunStates& r) {
    if (m.acceptance.is_buchi())
        throw std::invalid_argument("muller_accepts_lasso_run on a Buchi machine");
    require_nonempty_cycle(r);
    std::vector<StateId> infset = r.cycle;
    std::sort(infset.begin(), infset.end());
    infset.erase(std::unique(infset.begin(), infset.end()), infset.end());
    return std::any_of(m.acceptance.muller.begin(), m.acceptance.muller.end(),
                       [&](const std::vector<StateId>& f) { return f == infset; });
}

}  // namespace opn
