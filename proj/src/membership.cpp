#include "opn/membership.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "opn/semantics.hpp"

namespace opn {

namespace {

void require_buchi(const CounterMachine& m, const char* who) {
    if (!m.acceptance.is_buchi())
        throw std::invalid_argument(std::string(who) + " requires Buchi acceptance");
}

void require_known_letters(const CounterMachine& m, const LassoWord& w) {
    for (Letter a : w.spoke)
        if (!m.alphabet.contains(a))
            throw std::invalid_argument(std::string("letter '") + a + "' not in machine alphabet");
    for (Letter a : w.cycle)
        if (!m.alphabet.contains(a))
            throw std::invalid_argument(std::string("letter '") + a + "' not in machine alphabet");
}

/// Reachable (configuration, word-position-class) graph of m over the lasso
/// word, cut at the counter bound and node budget. Position classes: spoke
/// positions stay distinct, loop positions are taken modulo the loop length.
struct LassoGraph {
    std::vector<Configuration> configs;
    std::vector<uint32_t> classes;
    std::vector<int64_t> parent_node;           // -1 for the root
    std::vector<size_t> parent_edge;            // transition index used to enter
    std::vector<std::vector<std::pair<uint32_t, size_t>>> adj;  // (target node, transition)
    bool clipped = false;
    bool overflow = false;
};

LassoGraph explore_lasso_graph(const CounterMachine& m, const LassoWord& w,
                               const MemberBounds& bounds) {
    const uint32_t s_len = static_cast<uint32_t>(w.spoke.size());
    const uint32_t v_len = static_cast<uint32_t>(w.cycle.size());
    const uint32_t period = s_len + v_len;
    auto letter_at = [&](uint32_t cls) { return cls < s_len ? w.spoke[cls] : w.cycle[cls - s_len]; };
    auto next_class = [&](uint32_t cls) { uint32_t n = cls + 1; return n == period ? s_len : n; };

    LassoGraph g;
    std::map<std::pair<Configuration, uint32_t>, uint32_t> seen;
    std::deque<uint32_t> queue;

    auto intern = [&](Configuration c, uint32_t cls, int64_t par, size_t edge) -> int64_t {
        auto key = std::make_pair(std::move(c), cls);
        auto it = seen.find(key);
        if (it != seen.end()) return it->second;
        if (g.configs.size() >= bounds.node_budget) {
            g.overflow = true;
            return -1;
        }
        uint32_t id = static_cast<uint32_t>(g.configs.size());
        g.configs.push_back(key.first);
        g.classes.push_back(cls);
        g.parent_node.push_back(par);
        g.parent_edge.push_back(edge);
        g.adj.emplace_back();
        seen.emplace(std::move(key), id);
        queue.push_back(id);
        return id;
    };

    intern(initial_configuration(m), 0, -1, 0);
    Configuration succ;
    while (!queue.empty()) {
        uint32_t u = queue.front();
        queue.pop_front();
        const Configuration cur = g.configs[u];  // copy: g.configs may reallocate
        const uint32_t cls = g.classes[u];
        const Letter a = letter_at(cls);
        for (size_t ti = 0; ti < m.transitions.size(); ++ti) {
            const Transition& t = m.transitions[ti];
            if (t.src != cur.state || t.letter != a) continue;
            if (!guard_matches(t, cur)) continue;
            if (!apply_effect(t, cur, succ)) continue;
            bool over = false;
            for (int32_t v : succ.counters)
                if (v > bounds.counter_bound) over = true;
            if (over) {
                g.clipped = true;
                continue;
            }
            int64_t id = intern(succ, next_class(cls), u, ti);
            if (id >= 0) g.adj[u].push_back({static_cast<uint32_t>(id), ti});
        }
    }
    return g;
}

/// Iterative Tarjan strongly-connected components.
std::vector<int32_t> strongly_connected(const LassoGraph& g) {
    const size_t n = g.configs.size();
    std::vector<int32_t> comp(n, -1);
    std::vector<uint32_t> low(n, 0), disc(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<uint32_t> stack;
    uint32_t timer = 1;
    int32_t comp_count = 0;

    struct Frame {
        uint32_t v;
        size_t edge;
    };
    for (uint32_t root = 0; root < n; ++root) {
        if (disc[root] != 0) continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        disc[root] = low[root] = timer++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < g.adj[f.v].size()) {
                uint32_t to = g.adj[f.v][f.edge].first;
                ++f.edge;
                if (disc[to] == 0) {
                    disc[to] = low[to] = timer++;
                    stack.push_back(to);
                    on_stack[to] = 1;
                    call.push_back({to, 0});
                } else if (on_stack[to]) {
                    low[f.v] = std::min(low[f.v], disc[to]);
                }
            } else {
                uint32_t v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
                if (low[v] == disc[v]) {
                    while (true) {
                        uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = comp_count;
                        if (w == v) break;
                    }
                    ++comp_count;
                }
            }
        }
    }
    return comp;
}

/// Shortest edge path from `from` back to `from` staying inside its component
/// (at least one edge). Returns the transition indices and intermediate nodes.
bool cycle_through(const LassoGraph& g, const std::vector<int32_t>& comp, uint32_t from,
                   std::vector<size_t>& out_edges, std::vector<uint32_t>& out_nodes) {
    std::vector<int64_t> par(g.configs.size(), -2);
    std::vector<size_t> par_edge(g.configs.size(), 0);
    std::deque<uint32_t> q;
    // Seed with successors of `from` inside the component.
    for (auto [to, e] : g.adj[from]) {
        if (comp[to] != comp[from]) continue;
        if (to == from) {
            out_edges = {e};
            out_nodes = {from};
            return true;
        }
        if (par[to] != -2) continue;
        par[to] = from;
        par_edge[to] = e;
        q.push_back(to);
    }
    while (!q.empty()) {
        uint32_t u = q.front();
        q.pop_front();
        for (auto [to, e] : g.adj[u]) {
            if (comp[to] != comp[from]) continue;
            if (to == from) {
                out_edges.clear();
                out_nodes.clear();
                uint32_t cur = u;
                out_edges.push_back(e);
                while (cur != from) {
                    out_nodes.push_back(cur);
                    out_edges.push_back(par_edge[cur]);
                    cur = static_cast<uint32_t>(par[cur]);
                }
                out_nodes.push_back(from);
                std::reverse(out_edges.begin(), out_edges.end());
                std::reverse(out_nodes.begin(), out_nodes.end());
                return true;
            }
            if (par[to] != -2) continue;
            par[to] = u;
            par_edge[to] = e;
            q.push_back(to);
        }
    }
    return false;
}

RunWitness witness_from_graph(const LassoGraph& g, uint32_t f, const std::vector<size_t>& cyc_edges,
                              const std::vector<uint32_t>& cyc_nodes) {
    RunWitness wit;
    wit.monotone = false;
    // Stem: root -> f via breadth-first parents.
    std::vector<size_t> stem;
    std::vector<Configuration> stem_cfg;
    int64_t cur = f;
    while (cur >= 0) {
        stem_cfg.push_back(g.configs[static_cast<size_t>(cur)]);
        if (g.parent_node[static_cast<size_t>(cur)] >= 0)
            stem.push_back(g.parent_edge[static_cast<size_t>(cur)]);
        cur = g.parent_node[static_cast<size_t>(cur)];
    }
    std::reverse(stem.begin(), stem.end());
    std::reverse(stem_cfg.begin(), stem_cfg.end());
    wit.run.stem_transitions = std::move(stem);
    wit.stem_configs = std::move(stem_cfg);
    wit.run.cycle_transitions = cyc_edges;
    // cyc_nodes lists the nodes the cycle passes through starting at f; the
    // configurations *after* each edge are nodes 1.. and finally f again.
    for (size_t i = 1; i < cyc_nodes.size(); ++i) wit.cycle_configs.push_back(g.configs[cyc_nodes[i]]);
    wit.cycle_configs.push_back(g.configs[f]);
    return wit;
}

}  // namespace

Verdict lasso_member(const CounterMachine& m, const LassoWord& w, const MemberBounds& bounds) {
    require_buchi(m, "lasso membership");
    require_known_letters(m, w);
    {
        auto issues = validate(m);
        if (!issues.empty())
            throw std::invalid_argument("lasso membership: invalid machine: " + issues.front().message);
    }

    Verdict v;
    v.bounds = bounds;
    if (m.acceptance.buchi.empty()) {
        v.kind = VerdictKind::Reject;
        return v;
    }

    LassoGraph g = explore_lasso_graph(m, w, bounds);
    v.clipped = g.clipped;
    v.node_overflow = g.overflow;

    std::vector<int32_t> comp = strongly_connected(g);
    std::vector<char> comp_cyclic(
        comp.empty() ? 0 : static_cast<size_t>(*std::max_element(comp.begin(), comp.end())) + 1, 0);
    {
        std::vector<uint32_t> comp_size(comp_cyclic.size(), 0);
        for (int32_t c : comp) ++comp_size[static_cast<size_t>(c)];
        for (uint32_t u = 0; u < g.configs.size(); ++u) {
            if (comp_size[static_cast<size_t>(comp[u])] > 1) comp_cyclic[static_cast<size_t>(comp[u])] = 1;
            for (auto [to, e] : g.adj[u])
                if (to == u) comp_cyclic[static_cast<size_t>(comp[u])] = 1;
        }
    }
    for (uint32_t u = 0; u < g.configs.size(); ++u) {
        if (!m.acceptance.buchi_contains(g.configs[u].state)) continue;
        if (!comp_cyclic[static_cast<size_t>(comp[u])]) continue;
        std::vector<size_t> cyc_edges;
        std::vector<uint32_t> cyc_nodes;
        if (!cycle_through(g, comp, u, cyc_edges, cyc_nodes)) continue;
        v.kind = VerdictKind::Accept;
        v.witness = witness_from_graph(g, u, cyc_edges, cyc_nodes);
        if (!verify_witness(m, w, *v.witness, 1))
            throw std::logic_error("lasso membership: constructed witness failed replay");
        return v;
    }

    if (!g.clipped && !g.overflow) {
        v.kind = VerdictKind::Reject;
        return v;
    }

    // The exact graph was cut. For machines without zero tests an accepting
    // run can still be certified by a loop that returns to the same state
    // with componentwise no-smaller counters and an accepting visit inside:
    // repeating it only shifts counters upward. Depth-bounded search.
    if (m.all_blind()) {
        const uint32_t s_len = static_cast<uint32_t>(w.spoke.size());
        const uint32_t v_len = static_cast<uint32_t>(w.cycle.size());
        const uint32_t depth_limit = s_len + bounds.cycle_bound * v_len;

        struct PathEntry {
            Configuration cfg;
            uint32_t f_count;
            size_t via;  // transition used to enter (unused at index 0)
        };
        std::vector<PathEntry> path;
        path.push_back({initial_configuration(m), m.acceptance.buchi_contains(m.initial) ? 1u : 0u, 0});
        size_t visited = 0;
        bool depth_hit = false;
        bool dfs_clip = false;
        std::optional<RunWitness> found;

        std::function<void(void)> dfs = [&]() {
            if (found || v.node_overflow) return;
            const uint32_t d = static_cast<uint32_t>(path.size()) - 1;
            const PathEntry cur = path.back();  // copy: the recursion reallocates path
            if (d >= s_len && v_len > 0) {
                for (uint32_t j = s_len; j < d; ++j) {
                    if ((j - s_len) % v_len != (d - s_len) % v_len) continue;
                    const PathEntry& anc = path[j];
                    if (anc.cfg.state != cur.cfg.state) continue;
                    if (cur.f_count <= anc.f_count) continue;
                    bool cover = true;
                    for (size_t c = 0; c < cur.cfg.counters.size(); ++c)
                        if (cur.cfg.counters[c] < anc.cfg.counters[c]) cover = false;
                    if (!cover) continue;
                    RunWitness wit;
                    wit.monotone = true;
                    for (uint32_t i = 1; i <= j; ++i) wit.run.stem_transitions.push_back(path[i].via);
                    for (uint32_t i = 0; i <= j; ++i) wit.stem_configs.push_back(path[i].cfg);
                    for (uint32_t i = j + 1; i <= d; ++i) {
                        wit.run.cycle_transitions.push_back(path[i].via);
                        wit.cycle_configs.push_back(path[i].cfg);
                    }
                    found = wit;
                    return;
                }
            }
            if (d >= depth_limit) {
                depth_hit = true;
                return;
            }
            const Letter a = w.at(d);
            Configuration succ;
            for (size_t ti = 0; ti < m.transitions.size(); ++ti) {
                const Transition& t = m.transitions[ti];
                if (t.src != cur.cfg.state || t.letter != a) continue;
                if (!guard_matches(t, cur.cfg)) continue;
                if (!apply_effect(t, cur.cfg, succ)) continue;
                bool over = false;
                for (int32_t val : succ.counters)
                    if (val > bounds.counter_bound) over = true;
                if (over) {
                    dfs_clip = true;
                    continue;
                }
                if (++visited > bounds.node_budget) {
                    v.node_overflow = true;
                    return;
                }
                uint32_t fc = path.back().f_count + (m.acceptance.buchi_contains(succ.state) ? 1 : 0);
                path.push_back({succ, fc, ti});
                dfs();
                path.pop_back();
                if (found || v.node_overflow) return;
            }
        };
        dfs();
        v.clipped = v.clipped || dfs_clip;

        if (found) {
            v.kind = VerdictKind::Accept;
            v.witness = std::move(found);
            if (!verify_witness(m, w, *v.witness, 1))
                throw std::logic_error("lasso membership: constructed pumping witness failed replay");
            return v;
        }
        v.kind = VerdictKind::Unknown;
        v.reason = (depth_hit && !v.node_overflow) ? UnknownReason::Horizon : UnknownReason::Budget;
        return v;
    }

    v.kind = VerdictKind::Unknown;
    v.reason = UnknownReason::Budget;
    return v;
}

bool verify_witness(const CounterMachine& m, const LassoWord& w, const RunWitness& wit,
                    uint32_t extra_cycles) {
    if (!m.acceptance.is_buchi()) return false;
    const auto& stem = wit.run.stem_transitions;
    const auto& cyc = wit.run.cycle_transitions;
    if (cyc.empty()) return false;
    if (wit.stem_configs.size() != stem.size() + 1) return false;
    if (wit.cycle_configs.size() != cyc.size()) return false;

    Configuration c = initial_configuration(m);
    size_t pos = 0;
    auto step = [&](size_t idx) -> bool {
        if (idx >= m.transitions.size()) return false;
        const Transition& t = m.transitions[idx];
        if (t.src != c.state || t.letter != w.at(pos)) return false;
        if (!guard_matches(t, c)) return false;
        Configuration next;
        if (!apply_effect(t, c, next)) return false;
        c = std::move(next);
        ++pos;
        return true;
    };

    if (!(wit.stem_configs[0] == c)) return false;
    for (size_t i = 0; i < stem.size(); ++i) {
        if (!step(stem[i])) return false;
        if (!(wit.stem_configs[i + 1] == c)) return false;
    }
    const Configuration loop_start = c;
    bool f_seen = false;
    for (uint32_t rep = 0; rep <= extra_cycles; ++rep) {
        for (size_t i = 0; i < cyc.size(); ++i) {
            if (!step(cyc[i])) return false;
            if (rep == 0) {
                if (!(wit.cycle_configs[i] == c)) return false;
                if (m.acceptance.buchi_contains(c.state)) f_seen = true;
            }
        }
        if (rep == 0) {
            if (c.state != loop_start.state) return false;
            if (wit.monotone) {
                if (!m.all_blind()) return false;
                for (size_t i = 0; i < c.counters.size(); ++i)
                    if (c.counters[i] < loop_start.counters[i]) return false;
            } else {
                if (!(c == loop_start)) return false;
            }
        }
    }
    return f_seen;
}

CodedReport coded_member(const CounterMachine& m, const CodedPrefix& prefix,
                         const CodedMemberOptions& opts) {
    if (prefix.error)
        throw std::invalid_argument("coded membership needs an error-free prefix");
    if (prefix.trailing)
        throw std::invalid_argument("coded membership needs complete blocks only");

    const size_t n_blocks = prefix.blocks.size();
    CodedReport report;
    report.counter_cap = opts.counter_cap > 0
                             ? opts.counter_cap
                             : std::max<int32_t>(2 * static_cast<int32_t>(n_blocks), 2);

    for (const CodedBlock& b : prefix.blocks) {
        if (!m.alphabet.contains(b.separator) || !m.alphabet.contains(b.payload) ||
            (b.zeros > 0 && !m.alphabet.contains(kZero)))
            throw std::invalid_argument("coded membership: block letter not in machine alphabet");
    }

    struct Micro {
        StateId state;
        std::vector<int32_t> counters;
        uint8_t visits;
        uint32_t u_count;
        uint32_t parent;

        auto tie() const { return std::tie(state, counters, visits, u_count, parent); }
        bool operator<(const Micro& o) const { return tie() < o.tie(); }
    };

    std::vector<FrontierEntry> prev;  // previous block's frontier
    size_t work = 0;
    bool aborted = false;

    for (size_t bi = 0; bi < n_blocks && !aborted; ++bi) {
        const uint32_t n = static_cast<uint32_t>(bi + 1);
        const bool even = (n % 2 == 0);
        const int bank_idx = bank_first_counter(even);
        const CodedBlock& blk = prefix.blocks[bi];
        Word letters;
        letters += blk.separator;
        letters.append(blk.zeros, kZero);
        letters += blk.payload;

        std::vector<Micro> micro;
        if (bi == 0) {
            micro.push_back(Micro{m.initial, std::vector<int32_t>(m.num_counters, 0), 0, 0, 0});
        } else {
            micro.reserve(prev.size());
            for (uint32_t pi = 0; pi < prev.size(); ++pi)
                micro.push_back(Micro{prev[pi].state, prev[pi].counters, prev[pi].visits, 0, pi});
        }

        bool block_dropped = false;
        for (Letter a : letters) {
            std::set<Micro> next;
            Configuration cur, succ;
            for (const Micro& e : micro) {
                cur.state = e.state;
                cur.counters = e.counters;
                for (const Transition& t : m.transitions) {
                    if (t.src != e.state || t.letter != a) continue;
                    if (!guard_matches(t, cur)) continue;
                    if (!apply_effect(t, cur, succ)) continue;
                    if (++work > opts.node_budget) {
                        report.truncated = true;
                        if (report.truncated_block == 0) report.truncated_block = n;
                        aborted = true;
                        break;
                    }
                    bool over = false;
                    for (int32_t vv : succ.counters)
                        if (vv > report.counter_cap) over = true;
                    if (over) {
                        block_dropped = true;
                        continue;
                    }
                    uint32_t u2 = e.u_count;
                    if (static_cast<size_t>(bank_idx) < t.effects.size() &&
                        t.effects[static_cast<size_t>(bank_idx)] > 0)
                        ++u2;
                    next.insert(Micro{succ.state, succ.counters, e.visits, u2, e.parent});
                }
                if (aborted) break;
            }
            if (aborted) break;
            micro.assign(next.begin(), next.end());
            if (micro.empty()) break;
        }
        if (aborted) break;
        if (block_dropped) {
            report.truncated = true;
            if (report.truncated_block == 0) report.truncated_block = n;
        }

        // Fold the micro frontier at the block boundary: count an accepting
        // visit when the state after the payload is accepting, merge parent
        // sets of identical classes.
        std::map<std::tuple<StateId, std::vector<int32_t>, uint8_t, uint32_t>, std::vector<uint32_t>>
            folded;
        for (const Micro& e : micro) {
            uint8_t vis = e.visits;
            if (m.acceptance.is_buchi() && m.acceptance.buchi_contains(e.state))
                vis = static_cast<uint8_t>(std::min<uint32_t>(vis + 1, opts.visit_cap));
            folded[{e.state, e.counters, vis, e.u_count}].push_back(e.parent);
        }
        BlockFrontier frontier;
        for (auto& [key, parents] : folded) {
            std::sort(parents.begin(), parents.end());
            parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
            FrontierEntry fe;
            fe.state = std::get<0>(key);
            fe.counters = std::get<1>(key);
            fe.visits = std::get<2>(key);
            fe.u_count = std::get<3>(key);
            fe.parents = std::move(parents);
            frontier.entries.push_back(std::move(fe));
        }

        if (opts.prune_dominated) {
            // Drop entries covered by an otherwise identical entry with
            // componentwise no-smaller counters and no-fewer visits. This can
            // drop paths (extraction becomes incomplete) but keeps the
            // extinction block and the reachable accept evidence intact for
            // machines without zero tests.
            std::vector<char> dead(frontier.entries.size(), 0);
            for (size_t i = 0; i < frontier.entries.size(); ++i) {
                for (size_t j = 0; j < frontier.entries.size() && !dead[i]; ++j) {
                    if (i == j || dead[j]) continue;
                    const FrontierEntry &a = frontier.entries[i], &b = frontier.entries[j];
                    if (a.state != b.state || a.u_count != b.u_count) continue;
                    if (b.visits < a.visits) continue;
                    bool cover = true, strict = false;
                    for (size_t c = 0; c < a.counters.size(); ++c) {
                        if (b.counters[c] < a.counters[c]) cover = false;
                        if (b.counters[c] > a.counters[c]) strict = true;
                    }
                    if (cover && (strict || b.visits > a.visits)) dead[i] = 1;
                }
            }
            BlockFrontier kept;
            for (size_t i = 0; i < frontier.entries.size(); ++i)
                if (!dead[i]) kept.entries.push_back(std::move(frontier.entries[i]));
            frontier = std::move(kept);
        }

        uint8_t max_vis = 0;
        for (const FrontierEntry& fe : frontier.entries) max_vis = std::max(max_vis, fe.visits);
        report.survivors.push_back(frontier.entries.size());
        report.max_visits.push_back(max_vis);
        prev = frontier.entries;
        report.frontiers.push_back(std::move(frontier));

        if (prev.empty()) {
            // Once extinct, every later frontier is empty too.
            for (size_t rest = bi + 1; rest < n_blocks; ++rest) {
                report.frontiers.push_back(BlockFrontier{});
                report.survivors.push_back(0);
                report.max_visits.push_back(0);
            }
            break;
        }
    }
    return report;
}

CodedReport coded_member(const CounterMachine& m, const LassoWord& x, uint32_t blocks,
                         const CodedMemberOptions& opts) {
    return coded_member(m, encode_lasso(x, blocks), opts);
}

namespace {

using InfoFn = std::function<const SimulatorStateInfo*(StateId)>;

ExtractionResult extract_core(const CounterMachine& a, const InfoFn& info, const CodedReport& report,
                              size_t limit) {
    ExtractionResult res;
    const size_t n_blocks = report.frontiers.size();
    if (n_blocks == 0) return res;

    std::set<std::pair<std::vector<StateId>, std::vector<int32_t>>> dedup;
    std::vector<uint32_t> chosen(n_blocks, 0);

    std::function<bool(size_t)> walk = [&](size_t bi) -> bool {  // false: stop everything
        if (res.truncated) return false;
        const FrontierEntry& e = report.frontiers[bi].entries[chosen[bi]];
        if (info(e.state) == nullptr) return true;  // escape-side path: skip
        if (bi == 0) {
            ExtractedRun run;
            run.states.push_back(a.initial);
            run.counters.push_back(0);
            for (size_t n = 1; n <= n_blocks; ++n) {
                const FrontierEntry& fe = report.frontiers[n - 1].entries[chosen[n - 1]];
                const SimulatorStateInfo* inf = info(fe.state);
                run.states.push_back(inf->a_state);
                if (n < n_blocks)
                    run.counters.push_back(
                        static_cast<int32_t>(report.frontiers[n].entries[chosen[n]].u_count));
                else
                    run.counters.push_back(static_cast<int32_t>(fe.u_count) + inf->stored_n);
            }
            // The first block banks nothing on the first counter.
            if (report.frontiers[0].entries[chosen[0]].u_count != 0) return true;
            // The final payload step's effect is only cashed by the next
            // block's drain. A pending decrement from zero cannot be cashed
            // (both continuations drain an empty counter), so the path has no
            // extension and projects to no run.
            if (run.counters.back() < 0) return true;
            if (dedup.insert({run.states, run.counters}).second) {
                if (res.runs.size() >= limit) {
                    res.truncated = true;
                    return false;
                }
                res.runs.push_back(std::move(run));
            }
            return true;
        }
        for (uint32_t p : e.parents) {
            chosen[bi - 1] = p;
            if (!walk(bi - 1)) return false;
        }
        return true;
    };

    for (uint32_t i = 0; i < report.frontiers[n_blocks - 1].entries.size(); ++i) {
        chosen[n_blocks - 1] = i;
        if (!walk(n_blocks - 1)) break;
    }
    return res;
}

}  // namespace

ExtractionResult extract_runs(const BlockSimulator& b, const CodedReport& report, size_t limit) {
    return extract_core(
        b.a, [&](StateId q) { return &b.info[q]; }, report, limit);
}

ExtractionResult extract_runs(const SimulatorWithEscape& we, const CodedReport& report, size_t limit) {
    return extract_core(
        we.sim.a, [&](StateId q) { return we.info_of(q); }, report, limit);
}

bool extracted_run_valid(const CounterMachine& a, const LassoWord& x, const ExtractedRun& r) {
    if (r.states.empty() || r.states.size() != r.counters.size()) return false;
    if (r.states[0] != a.initial || r.counters[0] != 0) return false;
    Configuration cur;
    cur.state = r.states[0];
    cur.counters = {r.counters[0]};
    for (size_t i = 1; i < r.states.size(); ++i) {
        if (r.counters[i] < 0) return false;
        bool ok = false;
        Configuration next;
        for (const Transition& t : a.transitions) {
            if (t.src != cur.state || t.letter != x.at(i - 1) || t.dst != r.states[i]) continue;
            if (!guard_matches(t, cur)) continue;
            if (!apply_effect(t, cur, next)) continue;
            if (next.counters[0] != r.counters[i]) continue;
            ok = true;
            break;
        }
        if (!ok) return false;
        cur.state = r.states[i];
        cur.counters[0] = r.counters[i];
    }
    return true;
}

bool extracted_run_has_accepting_loop(const CounterMachine& a, const LassoWord& x,
                                      const ExtractedRun& r) {
    if (!a.acceptance.is_buchi()) return false;
    if (r.states.size() != r.counters.size() || r.states.empty()) return false;
    const size_t steps = r.states.size() - 1;
    const size_t s_len = x.spoke.size();
    const size_t v_len = x.cycle.size();
    const bool monotone_ok = a.all_blind();
    for (size_t p = s_len; p <= steps; ++p) {
        for (size_t q = p + v_len; q <= steps; q += v_len) {
            if (r.states[p] != r.states[q]) continue;
            bool counters_ok = monotone_ok ? (r.counters[q] >= r.counters[p])
                                           : (r.counters[q] == r.counters[p]);
            if (!counters_ok) continue;
            bool f_inside = false;
            for (size_t j = p + 1; j <= q; ++j)
                if (a.acceptance.buchi_contains(r.states[j])) f_inside = true;
            if (f_inside) return true;
        }
    }
    return false;
}

CodedEvidence coded_evidence(const BlockSimulator& b, const LassoWord& x, uint32_t blocks,
                             const CodedMemberOptions& opts) {
    CodedReport report = coded_member(b.machine, x, blocks, opts);
    CodedEvidence ev;
    for (size_t j = 0; j < report.frontiers.size(); ++j) {
        if (report.frontiers[j].entries.empty()) {
            bool sound = report.truncated_block == 0 || (j + 1) < report.truncated_block;
            if (sound) {
                ev.kind = CodedEvidenceKind::Dead;
                ev.dead_block = static_cast<uint32_t>(j + 1);
                return ev;
            }
            break;
        }
    }
    ExtractionResult ex = extract_runs(b, report);
    for (const ExtractedRun& run : ex.runs) {
        if (!extracted_run_valid(b.a, x, run)) continue;
        if (extracted_run_has_accepting_loop(b.a, x, run)) {
            ev.kind = CodedEvidenceKind::Accepting;
            ev.accepting_run = run;
            return ev;
        }
    }
    ev.kind = CodedEvidenceKind::Indecisive;
    return ev;
}

CodedEvidence coded_evidence(const SimulatorWithEscape& we, const LassoWord& x, uint32_t blocks,
                             const CodedMemberOptions& opts) {
    CodedReport report = coded_member(we.machine, x, blocks, opts);
    CodedEvidence ev;
    for (size_t j = 0; j < report.frontiers.size(); ++j) {
        size_t sim_alive = 0;
        for (const FrontierEntry& e : report.frontiers[j].entries)
            if (we.info_of(e.state) != nullptr) ++sim_alive;
        if (sim_alive == 0) {
            bool sound = report.truncated_block == 0 || (j + 1) < report.truncated_block;
            if (sound) {
                ev.kind = CodedEvidenceKind::Dead;
                ev.dead_block = static_cast<uint32_t>(j + 1);
                return ev;
            }
            break;
        }
    }
    ExtractionResult ex = extract_runs(we, report);
    for (const ExtractedRun& run : ex.runs) {
        if (!extracted_run_valid(we.sim.a, x, run)) continue;
        if (extracted_run_has_accepting_loop(we.sim.a, x, run)) {
            ev.kind = CodedEvidenceKind::Accepting;
            ev.accepting_run = run;
            return ev;
        }
    }
    ev.kind = CodedEvidenceKind::Indecisive;
    return ev;
}

}  // namespace opn
