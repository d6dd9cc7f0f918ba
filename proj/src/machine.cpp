#include "opn/machine.hpp"

#include <algorithm>

namespace opn {

Acceptance Acceptance::buchi_set(std::vector<StateId> f) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    Acceptance a;
    a.kind = Kind::Buchi;
    a.buchi = std::move(f);
    return a;
}

Acceptance Acceptance::muller_family(std::vector<std::vector<StateId>> fam) {
    for (auto& set : fam) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    Acceptance a;
    a.kind = Kind::Muller;
    a.muller = std::move(fam);
    return a;
}

bool Acceptance::buchi_contains(StateId q) const {
    return std::binary_search(buchi.begin(), buchi.end(), q);
}

bool CounterMachine::all_blind() const {
    return std::all_of(blind.begin(), blind.end(), [](bool b) { return b; });
}

std::optional<StateId> ShapeAutomaton::step(StateId q, Letter a) const {
    size_t li = alphabet.letters().find(a);
    if (li == std::string::npos) return std::nullopt;
    int32_t t = step_table[q * alphabet.size() + li];
    if (t < 0) return std::nullopt;
    return static_cast<StateId>(t);
}

bool ShapeAutomaton::is_accepting(StateId q) const {
    return std::binary_search(accepting.begin(), accepting.end(), q);
}

bool ShapeAutomaton::accepts_lasso(const LassoWord& w) const {
    // Deterministic run over u, then over copies of v until the state at the
    // cycle entry repeats; accepting iff that final loop sees an accepting state.
    StateId q = initial;
    for (Letter a : w.spoke) {
        auto t = step(q, a);
        if (!t) return false;
        q = *t;
    }
    std::vector<StateId> seen_at_entry;
    while (true) {
        if (std::find(seen_at_entry.begin(), seen_at_entry.end(), q) != seen_at_entry.end()) {
            // q repeats at the cycle entry: replay one period recording visits,
            // then keep replaying until the entry state cycles back to q.
            StateId start = q;
            bool visit = false;
            do {
                for (Letter a : w.cycle) {
                    auto t = step(q, a);
                    if (!t) return false;
                    q = *t;
                    if (is_accepting(q)) visit = true;
                }
            } while (q != start);
            return visit;
        }
        seen_at_entry.push_back(q);
        for (Letter a : w.cycle) {
            auto t = step(q, a);
            if (!t) return false;
            q = *t;
        }
    }
}

}  // namespace opn
