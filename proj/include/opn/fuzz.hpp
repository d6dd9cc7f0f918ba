#pragma once

// Reproducible randomized cross-checking.
//
// A fuzz run draws `trials` independent random instances from a single
// 64-bit seed and pushes each through three cross-check suites:
//
//   prefixes  run_prefixes against a brute-force enumerator on a random
//             machine and word — exact set equality.
//   lasso     lasso_member on two random one-counter machines and on their
//             union — whenever all three verdicts are decisive, the union
//             verdict must be the disjunction of the parts; accepting
//             witnesses are replayed independently.
//   escape    the analytic escape-word test against lasso_member on the
//             constructed escape machine — decisive verdicts must agree.
//
// The report is plain text built from integers only, so for a fixed seed it
// is byte-identical across runs, platforms, and thread counts.  Every
// indecisive verdict is reported together with the bounds that were in
// force, and the summary gives Unknown counts per suite.

#include <cstdint>
#include <string>

#include "opn/membership.hpp"

namespace opn {

struct FuzzOptions {
  uint32_t max_states = 3;
  uint32_t num_letters = 2;  // payload letters, drawn from a..z (at most 26)
  uint64_t seed = 1;
  uint32_t trials = 50;
  uint32_t threads = 1;  // worker threads; the report does not depend on this
  MemberBounds bounds;
};

struct FuzzResult {
  std::string report;
  bool ok = false;  // true when no cross-check disagreed
};

FuzzResult run_fuzz(const FuzzOptions& opts);

}  // namespace opn
