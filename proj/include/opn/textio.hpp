#pragma once

// Plain-text exchange format for counter machines.
//
// The format is line based.  Blank lines and lines starting with `#` are
// ignored.  The remaining lines, in any order except that declarations must
// precede their first use, are:
//
//   alphabet a b c          letters, one token each (single characters)
//   counters 2              number of counters
//   blind 0 1               0-based indices of blind counters (optional)
//   states q0 q1 q2         state names
//   initial q0              initial state
//   accept q0 q2            Buechi acceptance set (use `accept -` for empty)
//   muller {q0 q1} {q2}     Muller acceptance family (alternative to accept)
//   t q0 a Z* +0 q1         transition: src letter guards effects dst
//
// Guards are a string of length `counters` over {Z, P, *} (zero, positive,
// any); effects over {+, -, 0}.  For machines with zero counters both fields
// are written as the placeholder `-`.  A zero-tested counter cannot be
// decremented (a counter that is required to be zero has nothing to take),
// and blind counters admit only the `*` guard; violations are parse errors.
//
// Parsing validates the machine completely: a value returned by
// parse_automaton always passes validate().  Errors carry 1-based line
// numbers.  serialize_automaton followed by parse_automaton reproduces the
// machine exactly.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "opn/machine.hpp"

namespace opn {

// Error thrown on malformed input; `line` is 1-based, 0 when the problem is
// not tied to a single line (e.g. a missing section).
class ParseError : public std::runtime_error {
 public:
  ParseError(uint32_t line, const std::string& message);

  uint32_t line() const { return line_; }

 private:
  uint32_t line_ = 0;
};

// Parses the text format described above.  Throws ParseError on malformed
// input, including machines that would fail validate().
CounterMachine parse_automaton(const std::string& text);

// Reads the whole stream and parses it.
CounterMachine parse_automaton(std::istream& in);

// Renders `m` in the text format.  Throws std::invalid_argument when the
// machine does not pass validate() (such a machine has no faithful text
// form).
std::string serialize_automaton(const CounterMachine& m);

}  // namespace opn
