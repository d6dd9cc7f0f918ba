#include "doctest.h"

#include <string>

#include "opn/fuzz.hpp"

using namespace opn;

TEST_CASE("the fuzz report is deterministic for a fixed seed") {
  FuzzOptions opts;
  opts.seed = 11;
  opts.trials = 8;
  FuzzResult first = run_fuzz(opts);
  FuzzResult second = run_fuzz(opts);
  CHECK(first.ok);
  CHECK(first.report == second.report);
}

TEST_CASE("the thread count never changes the report") {
  FuzzOptions opts;
  opts.seed = 23;
  opts.trials = 9;
  opts.threads = 1;
  FuzzResult one = run_fuzz(opts);
  opts.threads = 3;
  FuzzResult three = run_fuzz(opts);
  CHECK(one.ok);
  CHECK(one.report == three.report);
}

TEST_CASE("the report carries its parameters and a final verdict") {
  FuzzOptions opts;
  opts.seed = 5;
  opts.trials = 4;
  FuzzResult r = run_fuzz(opts);
  CHECK(r.ok);
  CHECK(r.report.rfind("opn fuzz report\n", 0) == 0);
  CHECK(r.report.find("seed=5 trials=4") != std::string::npos);
  CHECK(r.report.find("summary unknown-rate ") != std::string::npos);
  CHECK(r.report.find("result PASS") != std::string::npos);
  CHECK(r.report.find("MISMATCH") == std::string::npos);
}

TEST_CASE("different seeds explore different machines") {
  FuzzOptions a;
  a.seed = 1;
  a.trials = 3;
  FuzzOptions b = a;
  b.seed = 2;
  CHECK(run_fuzz(a).report != run_fuzz(b).report);
}
