#include <gtest/gtest.h>

#include "helpers.hpp"
#include "hpt/checks.hpp"
#include "hpt/io.hpp"

namespace hpt {
namespace {

using test::error_kind;

TEST(Checks, SuitesAndTheorems) {
  EXPECT_EQ(suite_names().size(), 7u);
  std::size_t total = 0;
  for (const auto& suite : suite_names()) {
    const auto names = suite_theorems(suite);
    EXPECT_FALSE(names.empty()) << suite;
    total += names.size();
  }
  EXPECT_EQ(suite_theorems("all").size(), total);
  EXPECT_EQ(error_kind([] { suite_theorems("nope"); }), ErrorKind::InvalidInput);
  EXPECT_EQ(error_kind([] { run_theorem("nope", {}); }), ErrorKind::InvalidInput);
}

TEST(Checks, ZeroTrials) {
  CheckOptions opt;
  opt.trials = 0;
  for (const auto& r : run_suite("all", opt)) {
    EXPECT_EQ(r.trials, 0u);
    EXPECT_EQ(r.failures, 0u);
  }
}

// A handful of trials of every theorem over each ring.
TEST(Checks, EveryTheoremSmokeAllRings) {
  for (const Ring& ring : {Ring::integers(), Ring::rationals(), Ring::prime_field(5)}) {
    CheckOptions opt;
    opt.seed = 3;
    opt.trials = 5;
    opt.max_rank = 6;
    opt.ring = ring;
    for (const auto& r : run_suite("all", opt)) {
      EXPECT_EQ(r.failures, 0u) << ring.to_string() << " " << r.theorem << ": "
                                << (r.counterexample ? r.counterexample->at("message").get<std::string>() : "");
    }
  }
}

TEST(Checks, ReportIsThreadIndependent) {
  CheckOptions one;
  one.seed = 9;
  one.trials = 16;
  one.threads = 1;
  CheckOptions four = one;
  four.threads = 4;
  EXPECT_EQ(io::dump(to_json(run_theorem("remark_identities", one))),
            io::dump(to_json(run_theorem("remark_identities", four))));
}

}  // namespace
}  // namespace hpt
