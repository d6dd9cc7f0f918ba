#include "opn/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "opn/coding.hpp"
#include "opn/compose.hpp"
#include "opn/randgen.hpp"
#include "opn/semantics.hpp"
#include "opn/simulate.hpp"

namespace opn {

namespace {

const char* kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Accept: return "accept";
    case VerdictKind::Reject: return "reject";
    default: return "unknown";
  }
}

std::string verdict_name(const Verdict& v) {
  if (v.kind != VerdictKind::Unknown) return kind_name(v.kind);
  return v.reason == UnknownReason::Horizon ? "unknown(horizon)" : "unknown(budget)";
}

std::string bounds_line(const MemberBounds& b) {
  std::ostringstream out;
  out << "counter-bound=" << b.counter_bound << " cycle-bound=" << b.cycle_bound
      << " node-budget=" << b.node_budget;
  return out.str();
}

// Second, independent enumeration of all complete runs on a finite word,
// written directly against the transition fields. Used to cross-check
// run_prefixes.
void brute_runs_from(const CounterMachine& m, const Word& w, size_t pos,
                     std::vector<Configuration>& path, std::vector<RunPrefix>& out) {
  if (pos == w.size()) {
    RunPrefix r;
    r.configurations = path;
    r.consumed = w;
    if (m.acceptance.is_buchi()) {
      for (const Configuration& c : path) {
        if (m.acceptance.buchi_contains(c.state)) ++r.accept_visits;
      }
    }
    out.push_back(r);
    return;
  }
  const Configuration cur = path.back();  // copy: the recursion reallocates path
  for (const Transition& t : m.transitions) {
    if (t.src != cur.state || t.letter != w[pos]) continue;
    bool ok = true;
    Configuration next;
    next.state = t.dst;
    next.counters = cur.counters;
    for (uint32_t c = 0; c < m.num_counters && ok; ++c) {
      int32_t v = cur.counters[c];
      if (t.guards[c] == GuardTest::Zero && v != 0) ok = false;
      if (t.guards[c] == GuardTest::Positive && v <= 0) ok = false;
      if (ok) {
        next.counters[c] = v + t.effects[c];
        if (next.counters[c] < 0) ok = false;
      }
    }
    if (!ok) continue;
    path.push_back(next);
    brute_runs_from(m, w, pos + 1, path, out);
    path.pop_back();
  }
}

std::vector<RunPrefix> brute_runs(const CounterMachine& m, const Word& w) {
  std::vector<Configuration> path{initial_configuration(m)};
  std::vector<RunPrefix> out;
  brute_runs_from(m, w, 0, path, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct TrialStats {
  bool ok = true;
  uint32_t verdicts = 0;
  uint32_t unknown = 0;
  uint32_t lasso_coherent = 0;  // 1 when all three lasso verdicts were decisive
  uint32_t escape_decisive = 0;
};

struct SharedSetup {
  FuzzOptions opts;
  std::string letters;
  Alphabet payload{"a"};
  Alphabet gamma{"a"};
  CounterMachine escape;
};

void run_trial(const SharedSetup& setup, uint32_t index, uint64_t seed, std::ostringstream& out,
               TrialStats& stats) {
  SplitMix64 rng(seed);
  const MemberBounds& bounds = setup.opts.bounds;
  bool saw_unknown = false;

  // Suite 1: run_prefixes against the brute-force enumerator.
  {
    RandomMachineOptions mo;
    mo.max_states = setup.opts.max_states;
    mo.letters = setup.letters;
    mo.num_counters = static_cast<uint32_t>(rng.below(3));
    CounterMachine m = random_counter_machine(rng, mo);
    Word w = random_word(rng, setup.payload, 8);
    RunExploration explored = run_prefixes(m, w);
    std::vector<RunPrefix> expected = brute_runs(m, w);
    bool agree = !explored.truncated && explored.runs.size() == expected.size();
    for (size_t i = 0; agree && i < expected.size(); ++i) {
      agree = explored.runs[i] == expected[i] &&
              explored.runs[i].accept_visits == expected[i].accept_visits;
    }
    out << "trial " << index << " prefixes runs=" << expected.size()
        << (agree ? " ok" : " MISMATCH") << '\n';
    stats.ok = stats.ok && agree;
  }

  // Suite 2: lasso membership on two machines and on their union.
  {
    RandomMachineOptions mo;
    mo.max_states = setup.opts.max_states;
    mo.letters = setup.letters;
    mo.num_counters = 1;
    CounterMachine first = random_counter_machine(rng, mo);
    CounterMachine second = random_counter_machine(rng, mo);
    LassoWord w = random_lasso(rng, setup.payload, 3, 3);
    Verdict v1 = lasso_member(first, w, bounds);
    Verdict v2 = lasso_member(second, w, bounds);
    Verdict vu = lasso_member(union_machines(first, second), w, bounds);
    stats.verdicts += 3;
    for (const Verdict* v : {&v1, &v2, &vu}) {
      if (v->kind == VerdictKind::Unknown) {
        ++stats.unknown;
        saw_unknown = true;
      }
    }

    bool coherent = true;
    if (v1.kind == VerdictKind::Accept && !verify_witness(first, w, *v1.witness)) coherent = false;
    if (v2.kind == VerdictKind::Accept && !verify_witness(second, w, *v2.witness)) coherent = false;
    if ((v1.kind == VerdictKind::Accept || v2.kind == VerdictKind::Accept) &&
        vu.kind == VerdictKind::Reject) {
      coherent = false;
    }
    if (vu.kind == VerdictKind::Accept && v1.kind == VerdictKind::Reject &&
        v2.kind == VerdictKind::Reject) {
      coherent = false;
    }
    bool all_decisive = v1.kind != VerdictKind::Unknown && v2.kind != VerdictKind::Unknown &&
                        vu.kind != VerdictKind::Unknown;
    if (all_decisive) {
      stats.lasso_coherent += 1;
      bool parts = v1.kind == VerdictKind::Accept || v2.kind == VerdictKind::Accept;
      if ((vu.kind == VerdictKind::Accept) != parts) coherent = false;
    }
    out << "trial " << index << " lasso first=" << verdict_name(v1)
        << " second=" << verdict_name(v2) << " union=" << verdict_name(vu)
        << (coherent ? " ok" : " MISMATCH") << '\n';
    stats.ok = stats.ok && coherent;
  }

  // Suite 3: analytic escape test against search on the escape machine.
  {
    LassoWord w = random_lasso(rng, setup.gamma, 4, 3);
    bool analytic = in_escape(w);
    Verdict v = lasso_member(setup.escape, w, bounds);
    stats.verdicts += 1;
    bool agree = true;
    if (v.kind == VerdictKind::Unknown) {
      ++stats.unknown;
      saw_unknown = true;
    } else {
      stats.escape_decisive += 1;
      agree = (v.kind == VerdictKind::Accept) == analytic;
    }
    out << "trial " << index << " escape analytic=" << (analytic ? "in" : "out")
        << " search=" << verdict_name(v) << (agree ? " ok" : " MISMATCH") << '\n';
    stats.ok = stats.ok && agree;
  }

  if (saw_unknown) {
    out << "trial " << index << " note indecisive under bounds " << bounds_line(bounds) << '\n';
  }
}

}  // namespace

FuzzResult run_fuzz(const FuzzOptions& opts) {
  if (opts.num_letters == 0 || opts.num_letters > 26) {
    throw std::invalid_argument("run_fuzz requires between 1 and 26 letters");
  }
  if (opts.max_states == 0) throw std::invalid_argument("run_fuzz requires max_states >= 1");

  SharedSetup setup;
  setup.opts = opts;
  for (uint32_t i = 0; i < opts.num_letters; ++i) {
    setup.letters += static_cast<char>('a' + i);
  }
  setup.payload = Alphabet(setup.letters);
  setup.gamma = coded_alphabet(setup.payload);
  setup.escape = build_escape_machine(setup.payload);

  // Per-trial seeds are drawn up front so the work can be partitioned
  // across threads without changing any trial's input.
  SplitMix64 master(opts.seed);
  std::vector<uint64_t> seeds(opts.trials);
  for (uint64_t& s : seeds) s = master.next();

  std::vector<std::string> sections(opts.trials);
  std::vector<TrialStats> stats(opts.trials);
  auto work = [&](uint32_t worker, uint32_t stride) {
    for (uint32_t i = worker; i < opts.trials; i += stride) {
      std::ostringstream out;
      run_trial(setup, i, seeds[i], out, stats[i]);
      sections[i] = out.str();
    }
  };

  uint32_t workers = std::max<uint32_t>(1, opts.threads);
  workers = std::min(workers, std::max<uint32_t>(1, opts.trials));
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (uint32_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    for (std::thread& t : pool) t.join();
  }

  TrialStats total;
  for (const TrialStats& s : stats) {
    total.ok = total.ok && s.ok;
    total.verdicts += s.verdicts;
    total.unknown += s.unknown;
    total.lasso_coherent += s.lasso_coherent;
    total.escape_decisive += s.escape_decisive;
  }

  std::ostringstream report;
  report << "opn fuzz report\n";
  report << "seed=" << opts.seed << " trials=" << opts.trials << " max-states=" << opts.max_states
         << " letters=" << setup.letters << '\n';
  report << "bounds " << bounds_line(opts.bounds) << '\n';
  for (const std::string& s : sections) report << s;
  report << "summary trials=" << opts.trials << " lasso-all-decisive=" << total.lasso_coherent
         << " escape-decisive=" << total.escape_decisive << '\n';
  report << "summary unknown-rate " << total.unknown << '/' << total.verdicts << '\n';
  report << "result " << (total.ok ? "PASS" : "FAIL") << '\n';

  FuzzResult result;
  result.report = report.str();
  result.ok = total.ok;
  return result;
}

}  // namespace opn
