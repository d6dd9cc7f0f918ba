#pragma once

// Shared fixtures for the test suite: machines written in the text format
// (so every test also exercises the parser) and an independent brute-force
// run enumerator used as ground truth against the library's exploration.

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

#include "opn/machine.hpp"
#include "opn/semantics.hpp"
#include "opn/textio.hpp"

namespace opn_test {

inline opn::CounterMachine from_text(const std::string& text) {
  return opn::parse_automaton(text);
}

/// One state, accepting, self-loop on every letter; counter-free. Accepts
/// every infinite word over its alphabet.
inline opn::CounterMachine all_accepting(const std::string& letters) {
  std::string text = "alphabet";
  for (char c : letters) text += std::string(" ") + c;
  text += "\ncounters 0\nstates q0\ninitial q0\naccept q0\n";
  for (char c : letters) text += std::string("t q0 ") + c + " - - q0\n";
  return from_text(text);
}

/// One zero-testable counter: 'a' pushes, 'b' at positive pops, 'b' at zero
/// holds in the accepting state. Accepts words that eventually stop pushing
/// more than they pop.
inline opn::CounterMachine push_pop_machine() {
  return from_text(
      "alphabet a b\n"
      "counters 1\n"
      "states q0 q1\n"
      "initial q0\n"
      "accept q1\n"
      "t q0 a * + q0\n"
      "t q0 b * 0 q1\n"
      "t q1 a P - q1\n"
      "t q1 b * 0 q1\n");
}

/// Counter increments on every letter; single accepting state.
inline opn::CounterMachine always_increment_machine() {
  return from_text(
      "alphabet a b\n"
      "counters 1\n"
      "states q0\n"
      "initial q0\n"
      "accept q0\n"
      "t q0 a * + q0\n"
      "t q0 b * + q0\n");
}

/// One state in F, self-loops with guard Zero effect 0 and guard Positive
/// effect 0 on every letter; accepts every word while its counter stays 0.
inline opn::CounterMachine zero_loop_machine(const std::string& letters) {
  std::string text = "alphabet";
  for (char c : letters) text += std::string(" ") + c;
  text += "\ncounters 1\nstates q0\ninitial q0\naccept q0\n";
  for (char c : letters) {
    text += std::string("t q0 ") + c + " Z 0 q0\n";
    text += std::string("t q0 ") + c + " P 0 q0\n";
  }
  return from_text(text);
}

/// Independent ground truth for run_prefixes: an iterative worklist
/// enumeration of all complete runs, checking guards and non-negativity
/// directly on the transition fields.
inline std::vector<opn::RunPrefix> oracle_runs(const opn::CounterMachine& m, const opn::Word& w) {
  struct Item {
    std::vector<opn::Configuration> path;
  };
  std::deque<Item> work;
  work.push_back({{opn::initial_configuration(m)}});
  std::vector<opn::RunPrefix> out;
  while (!work.empty()) {
    Item it = std::move(work.front());
    work.pop_front();
    size_t pos = it.path.size() - 1;
    if (pos == w.size()) {
      opn::RunPrefix r;
      r.configurations = it.path;
      r.consumed = w;
      if (m.acceptance.is_buchi()) {
        for (const opn::Configuration& c : it.path) {
          if (m.acceptance.buchi_contains(c.state)) ++r.accept_visits;
        }
      }
      out.push_back(std::move(r));
      continue;
    }
    const opn::Configuration& cur = it.path.back();
    for (const opn::Transition& t : m.transitions) {
      if (t.src != cur.state || t.letter != w[pos]) continue;
      bool ok = true;
      opn::Configuration next;
      next.state = t.dst;
      next.counters = cur.counters;
      for (uint32_t c = 0; c < m.num_counters && ok; ++c) {
        int32_t v = cur.counters[c];
        if (t.guards[c] == opn::GuardTest::Zero && v != 0) ok = false;
        if (t.guards[c] == opn::GuardTest::Positive && v <= 0) ok = false;
        if (ok) {
          next.counters[c] = v + t.effects[c];
          if (next.counters[c] < 0) ok = false;
        }
      }
      if (!ok) continue;
      Item ext = it;
      ext.path.push_back(next);
      work.push_back(std::move(ext));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace opn_test
