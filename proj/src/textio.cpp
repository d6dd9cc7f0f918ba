#include "opn/textio.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "opn/semantics.hpp"

namespace opn {

namespace {

std::string with_line(uint32_t line, const std::string& message) {
  std::ostringstream out;
  out << "line " << line << ": " << message;
  return out.str();
}

// Splits on runs of spaces and tabs.
std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

struct ParserState {
  std::optional<Alphabet> alphabet;
  std::optional<uint32_t> counters;
  std::vector<bool> blind;
  bool saw_blind_line = false;
  std::vector<std::string> state_names;
  std::map<std::string, StateId> state_index;
  std::optional<StateId> initial;
  std::optional<Acceptance> acceptance;
  std::vector<Transition> transitions;
};

StateId lookup_state(const ParserState& p, uint32_t line, const std::string& name) {
  auto it = p.state_index.find(name);
  if (it == p.state_index.end()) {
    throw ParseError(line, "unknown state '" + name + "'");
  }
  return it->second;
}

void handle_alphabet(ParserState& p, uint32_t line, const std::vector<std::string>& tok) {
  if (p.alphabet) throw ParseError(line, "duplicate alphabet declaration");
  std::string letters;
  for (size_t i = 1; i < tok.size(); ++i) {
    if (tok[i].size() != 1) {
      throw ParseError(line, "alphabet letters must be single characters, got '" + tok[i] + "'");
    }
    letters += tok[i][0];
  }
  if (letters.empty()) throw ParseError(line, "alphabet must list at least one letter");
  try {
    p.alphabet = Alphabet(letters);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

void handle_counters(ParserState& p, uint32_t line, const std::vector<std::string>& tok) {
  if (p.counters) throw ParseError(line, "duplicate counters declaration");
  if (tok.size() != 2) throw ParseError(line, "expected: counters K");
  uint32_t k = 0;
  try {
    size_t pos = 0;
    unsigned long parsed = std::stoul(tok[1], &pos);
    if (pos != tok[1].size() || parsed > 64) throw std::invalid_argument("");
    k = static_cast<uint32_t>(parsed);
  } catch (const std::exception&) {
    throw ParseError(line, "counters must be a small non-negative integer, got '" + tok[1] + "'");
  }
  p.counters = k;
  p.blind.assign(k, false);
}

void handle_blind(ParserState& p, uint32_t line, const std::vector<std::string>& tok) {
  if (!p.counters) throw ParseError(line, "blind must come after counters");
  if (p.saw_blind_line) throw ParseError(line, "duplicate blind declaration");
  p.saw_blind_line = true;
  for (size_t i = 1; i < tok.size(); ++i) {
    uint32_t idx = 0;
    try {
      size_t pos = 0;
      unsigned long parsed = std::stoul(tok[i], &pos);
      if (pos != tok[i].size()) throw std::invalid_argument("");
      idx = static_cast<uint32_t>(parsed);
    } catch (const std::exception&) {
      throw ParseError(line, "blind indices must be non-negative integers, got '" + tok[i] + "'");
    }
    if (idx >= *p.counters) {
      throw ParseError(line, "blind index " + tok[i] + " out of range for " +
                                 std::to_string(*p.counters) + " counter(s)");
    }
    if (p.blind[idx]) throw ParseError(line, "duplicate blind index " + tok[i]);
    p.blind[idx] = true;
  }
}

void handle_states(ParserState& p, uint32_t line, const std::vector<std::string>& tok) {
  if (!p.state_names.empty()) throw ParseError(line, "duplicate states declaration");
  if (tok.size() < 2) throw ParseError(line, "states must list at least one state");
  for (size_t i = 1; i < tok.size(); ++i) {
    if (p.state_index.count(tok[i]) != 0) {
      throw ParseError(line, "duplicate state '" + tok[i] + "'");
    }
    p.state_index[tok[i]] = static_cast<StateId>(p.state_names.size());
    p.state_names.push_back(tok[i]);
  }
}

void handle_initial(ParserState& p, uint32_t line, const std::vector<std::string>& tok) {
  if (p.initial) throw ParseError(line, "duplicate initial declaration");
  if (p.state_names.empty()) throw ParseError(line, "initial must come after states");
  if (tok.size() != 2) throw ParseError(line, "expected: initial STATE");
  p.initial = lookup_state(p, line, tok[1]);
}

void handle_accept(ParserState& p, uint32_t line, const std::vector<std::string>& tok) {
  if (p.acceptance) throw ParseError(line, "duplicate acceptance declaration");
  if (p.state_names.empty()) throw ParseError(line, "accept must come after states");
  Acceptance acc;
  acc.kind = Acceptance::Kind::Buchi;
  if (tok.size() == 2 && tok[1] == "-") {
    p.acceptance = acc;  // explicitly empty set
    return;
  }
  for (size_t i = 1; i < tok.size(); ++i) {
    StateId q = lookup_state(p, line, tok[i]);
    if (acc.buchi_contains(q)) throw ParseError(line, "duplicate accepting state '" + tok[i] + "'");
    acc.buchi.push_back(q);
  }
  p.acceptance = acc;
}

void handle_muller(ParserState& p, uint32_t line, const std::vector<std::string>& tok) {
  if (p.acceptance) throw ParseError(line, "duplicate acceptance declaration");
  if (p.state_names.empty()) throw ParseError(line, "muller must come after states");
  Acceptance acc;
  acc.kind = Acceptance::Kind::Muller;
  std::vector<StateId> cur;
  bool open = false;
  for (size_t i = 1; i < tok.size(); ++i) {
    std::string t = tok[i];
    // Braces may hug their neighbours: {q0 or q1} or {q2}.
    while (!t.empty() && t.front() == '{') {
      if (open) throw ParseError(line, "nested '{' in muller family");
      open = true;
      cur.clear();
      t.erase(t.begin());
    }
    uint32_t closes = 0;
    while (!t.empty() && t.back() == '}') {
      ++closes;
      t.pop_back();
    }
    if (closes > 1) throw ParseError(line, "stray '}' in muller family");
    if (!t.empty()) {
      if (!open) throw ParseError(line, "state '" + t + "' outside braces in muller family");
      cur.push_back(lookup_state(p, line, t));
    }
    if (closes == 1) {
      if (!open) throw ParseError(line, "stray '}' in muller family");
      if (cur.empty()) throw ParseError(line, "empty set in muller family");
      std::sort(cur.begin(), cur.end());
      cur.erase(std::unique(cur.begin(), cur.end()), cur.end());
      acc.muller.push_back(cur);
      cur.clear();
      open = false;
    }
  }
  if (open) throw ParseError(line, "unterminated '{' in muller family");
  p.acceptance = acc;
}

void handle_transition(ParserState& p, uint32_t line, const std::vector<std::string>& tok) {
  if (!p.alphabet) throw ParseError(line, "transitions must come after alphabet");
  if (!p.counters) throw ParseError(line, "transitions must come after counters");
  if (p.state_names.empty()) throw ParseError(line, "transitions must come after states");
  if (tok.size() != 6) throw ParseError(line, "expected: t SRC LETTER GUARDS EFFECTS DST");
  const uint32_t k = *p.counters;

  Transition t;
  t.src = lookup_state(p, line, tok[1]);
  if (tok[2].size() != 1) throw ParseError(line, "letter must be a single character");
  t.letter = tok[2][0];
  if (!p.alphabet->contains(t.letter)) {
    throw ParseError(line, std::string("unknown letter '") + t.letter + "'");
  }

  const std::string& guards = tok[3];
  const std::string& effects = tok[4];
  if (k == 0) {
    if (guards != "-" || effects != "-") {
      throw ParseError(line, "machines with zero counters use '-' for guards and effects");
    }
  } else {
    if (guards.size() != k) {
      throw ParseError(line, "guards must have exactly " + std::to_string(k) + " character(s)");
    }
    if (effects.size() != k) {
      throw ParseError(line, "effects must have exactly " + std::to_string(k) + " character(s)");
    }
  }
  for (uint32_t c = 0; c < k; ++c) {
    GuardTest g;
    switch (guards[c]) {
      case 'Z': g = GuardTest::Zero; break;
      case 'P': g = GuardTest::Positive; break;
      case '*': g = GuardTest::Any; break;
      default:
        throw ParseError(line, std::string("guard characters must be Z, P or *, got '") +
                                   guards[c] + "'");
    }
    if (p.blind[c] && g != GuardTest::Any) {
      throw ParseError(line, "counter " + std::to_string(c) +
                                 " is blind and admits only the '*' guard");
    }
    Effect e;
    switch (effects[c]) {
      case '+': e = +1; break;
      case '-': e = -1; break;
      case '0': e = 0; break;
      default:
        throw ParseError(line, std::string("effect characters must be +, - or 0, got '") +
                                   effects[c] + "'");
    }
    if (g == GuardTest::Zero && e < 0) {
      throw ParseError(line, "counter " + std::to_string(c) +
                                 " is tested for zero and cannot be decremented (an empty "
                                 "counter has nothing to take)");
    }
    t.guards.push_back(g);
    t.effects.push_back(e);
  }
  t.dst = lookup_state(p, line, tok[5]);
  p.transitions.push_back(t);
}

}  // namespace

ParseError::ParseError(uint32_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : with_line(line, message)), line_(line) {}

CounterMachine parse_automaton(const std::string& text) {
  ParserState p;
  std::istringstream in(text);
  std::string raw;
  uint32_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<std::string> tok = tokenize(raw);
    if (tok.empty() || tok[0][0] == '#') continue;
    const std::string& head = tok[0];
    if (head == "alphabet") {
      handle_alphabet(p, line_no, tok);
    } else if (head == "counters") {
      handle_counters(p, line_no, tok);
    } else if (head == "blind") {
      handle_blind(p, line_no, tok);
    } else if (head == "states") {
      handle_states(p, line_no, tok);
    } else if (head == "initial") {
      handle_initial(p, line_no, tok);
    } else if (head == "accept") {
      handle_accept(p, line_no, tok);
    } else if (head == "muller") {
      handle_muller(p, line_no, tok);
    } else if (head == "t") {
      handle_transition(p, line_no, tok);
    } else {
      throw ParseError(line_no, "unknown directive '" + head + "'");
    }
  }

  if (!p.alphabet) throw ParseError(0, "missing alphabet declaration");
  if (!p.counters) throw ParseError(0, "missing counters declaration");
  if (p.state_names.empty()) throw ParseError(0, "missing states declaration");
  if (!p.initial) throw ParseError(0, "missing initial declaration");
  if (!p.acceptance) throw ParseError(0, "missing accept or muller declaration");

  CounterMachine m;
  m.alphabet = *p.alphabet;
  m.num_counters = *p.counters;
  m.blind = p.blind;
  m.state_names = p.state_names;
  m.initial = *p.initial;
  m.acceptance = *p.acceptance;
  m.transitions = p.transitions;

  std::vector<Diagnostic> problems = validate(m);
  if (!problems.empty()) {
    throw ParseError(0, "machine fails validation: " + problems.front().message);
  }
  return m;
}

CounterMachine parse_automaton(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_automaton(buffer.str());
}

std::string serialize_automaton(const CounterMachine& m) {
  std::vector<Diagnostic> problems = validate(m);
  if (!problems.empty()) {
    throw std::invalid_argument("cannot serialize invalid machine: " + problems.front().message);
  }

  std::ostringstream out;
  out << "alphabet";
  for (Letter l : m.alphabet.letters()) out << ' ' << l;
  out << '\n';
  out << "counters " << m.num_counters << '\n';
  bool any_blind = false;
  for (bool b : m.blind) any_blind = any_blind || b;
  if (any_blind) {
    out << "blind";
    for (uint32_t c = 0; c < m.num_counters; ++c) {
      if (m.blind[c]) out << ' ' << c;
    }
    out << '\n';
  }
  out << "states";
  for (const std::string& name : m.state_names) out << ' ' << name;
  out << '\n';
  out << "initial " << m.state_names[m.initial] << '\n';
  if (m.acceptance.is_buchi()) {
    out << "accept";
    if (m.acceptance.buchi.empty()) {
      out << " -";
    } else {
      for (StateId q : m.acceptance.buchi) out << ' ' << m.state_names[q];
    }
    out << '\n';
  } else {
    out << "muller";
    for (const std::vector<StateId>& set : m.acceptance.muller) {
      out << " {";
      for (size_t i = 0; i < set.size(); ++i) {
        if (i > 0) out << ' ';
        out << m.state_names[set[i]];
      }
      out << '}';
    }
    out << '\n';
  }
  for (const Transition& t : m.transitions) {
    out << "t " << m.state_names[t.src] << ' ' << t.letter << ' ';
    if (m.num_counters == 0) {
      out << "- -";
    } else {
      for (GuardTest g : t.guards) {
        out << (g == GuardTest::Zero ? 'Z' : g == GuardTest::Positive ? 'P' : '*');
      }
      out << ' ';
      for (Effect e : t.effects) {
        out << (e > 0 ? '+' : e < 0 ? '-' : '0');
      }
    }
    out << ' ' << m.state_names[t.dst] << '\n';
  }
  return out.str();
}

}  // namespace opn
