#include "opn/randgen.hpp"

#include <stdexcept>

namespace opn {

uint64_t SplitMix64::below(uint64_t n) {
  if (n == 0) throw std::invalid_argument("SplitMix64::below requires a positive bound");
  return next() % n;
}

int64_t SplitMix64::range(int64_t lo, int64_t hi) {
  if (lo > hi) throw std::invalid_argument("SplitMix64::range requires lo <= hi");
  return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo) + 1));
}

bool SplitMix64::chance(uint32_t percent) { return below(100) < percent; }

CounterMachine random_counter_machine(SplitMix64& rng, const RandomMachineOptions& opts) {
  if (opts.letters.empty()) {
    throw std::invalid_argument("random_counter_machine requires at least one letter");
  }
  if (opts.min_states == 0 || opts.min_states > opts.max_states) {
    throw std::invalid_argument("random_counter_machine requires 1 <= min_states <= max_states");
  }

  CounterMachine m;
  m.alphabet = Alphabet(opts.letters);
  m.num_counters = opts.num_counters;
  m.blind.assign(opts.num_counters, false);
  for (uint32_t c = 0; c < opts.num_counters; ++c) {
    m.blind[c] = rng.chance(opts.blind_percent);
  }

  uint32_t n =
      static_cast<uint32_t>(rng.range(opts.min_states, opts.max_states));
  for (uint32_t i = 0; i < n; ++i) {
    m.state_names.push_back("q" + std::to_string(i));
  }
  m.initial = 0;

  auto draw_transition = [&](StateId src, Letter letter) {
    Transition t;
    t.src = src;
    t.letter = letter;
    for (uint32_t c = 0; c < opts.num_counters; ++c) {
      GuardTest g = GuardTest::Any;
      if (!m.blind[c]) {
        switch (rng.below(3)) {
          case 0: g = GuardTest::Zero; break;
          case 1: g = GuardTest::Positive; break;
          default: g = GuardTest::Any; break;
        }
      }
      Effect e;
      if (g == GuardTest::Zero) {
        e = static_cast<Effect>(rng.below(2));  // 0 or +1; a zero counter has nothing to take
      } else {
        e = static_cast<Effect>(rng.range(-1, 1));
      }
      t.guards.push_back(g);
      t.effects.push_back(e);
    }
    t.dst = static_cast<StateId>(rng.below(n));
    m.transitions.push_back(t);
  };

  for (StateId src = 0; src < n; ++src) {
    for (Letter letter : m.alphabet.letters()) {
      if (rng.chance(opts.density_percent)) {
        draw_transition(src, letter);
        if (rng.chance(opts.density_percent / 2)) draw_transition(src, letter);
      }
    }
  }

  m.acceptance.kind = Acceptance::Kind::Buchi;
  if (rng.chance(opts.accept_nonempty_percent)) {
    for (StateId q = 0; q < n; ++q) {
      if (rng.chance(50)) m.acceptance.buchi.push_back(q);
    }
    if (m.acceptance.buchi.empty()) {
      m.acceptance.buchi.push_back(static_cast<StateId>(rng.below(n)));
    }
  }
  return m;
}

LassoWord random_lasso(SplitMix64& rng, const Alphabet& sigma, uint32_t max_spoke,
                       uint32_t max_cycle) {
  if (max_cycle == 0) throw std::invalid_argument("random_lasso requires max_cycle >= 1");
  Word spoke = random_word(rng, sigma, max_spoke);
  Word cycle;
  uint32_t cl = static_cast<uint32_t>(rng.range(1, max_cycle));
  for (uint32_t i = 0; i < cl; ++i) cycle += sigma.at(rng.below(sigma.size()));
  return LassoWord(spoke, cycle);
}

Word random_word(SplitMix64& rng, const Alphabet& sigma, uint32_t max_length) {
  Word w;
  uint32_t len = static_cast<uint32_t>(rng.range(0, max_length));
  for (uint32_t i = 0; i < len; ++i) w += sigma.at(rng.below(sigma.size()));
  return w;
}

}  // namespace opn
