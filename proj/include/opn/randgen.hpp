#pragma once

// Deterministic random generation of machines and lasso words.
//
// Everything here is driven by a SplitMix64 generator so that a single
// 64-bit seed reproduces the same objects on every platform and build.  The
// standard <random> engines are deliberately not used: their distributions
// are implementation-defined, which would break byte-identical reports.

#include <cstdint>
#include <string>

#include "opn/alphabet.hpp"
#include "opn/machine.hpp"

namespace opn {

// The splitmix64 generator (public-domain algorithm); tiny state, good
// diffusion, and fully specified output for any seed.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-enough value in [0, n); n must be positive.  The slight modulo
  // bias is irrelevant for test-case generation and keeps results portable.
  uint64_t below(uint64_t n);

  // Uniform-enough value in [lo, hi], inclusive.
  int64_t range(int64_t lo, int64_t hi);

  // True with probability percent/100.
  bool chance(uint32_t percent);

 private:
  uint64_t state_;
};

struct RandomMachineOptions {
  uint32_t min_states = 1;
  uint32_t max_states = 3;
  std::string letters = "ab";  // payload letters to draw the alphabet from
  uint32_t num_counters = 1;
  // Probability (percent) that a counter is blind.  Blind counters only get
  // the unconstrained guard.
  uint32_t blind_percent = 50;
  // Probability (percent) that a given (state, letter) pair gets an edge; a
  // second parallel edge is added with half that probability.
  uint32_t density_percent = 70;
  // Probability (percent) that the acceptance set is forced non-empty.
  uint32_t accept_nonempty_percent = 80;
};

// Draws a random Buechi counter machine.  Guards respect blindness and never
// pair a zero test with a decrement, so the result always validates.
CounterMachine random_counter_machine(SplitMix64& rng, const RandomMachineOptions& opts);

// Draws a lasso word u v^omega over `sigma` with 0 <= |u| <= max_spoke and
// 1 <= |v| <= max_cycle.
LassoWord random_lasso(SplitMix64& rng, const Alphabet& sigma, uint32_t max_spoke,
                       uint32_t max_cycle);

// Draws a plain finite word over `sigma` with |w| <= max_length.
Word random_word(SplitMix64& rng, const Alphabet& sigma, uint32_t max_length);

}  // namespace opn
