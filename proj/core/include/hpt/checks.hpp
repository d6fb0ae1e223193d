#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hpt/ring.hpp"

namespace hpt {

struct CheckOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t max_rank = 8;
  Ring ring = Ring::integers();
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CheckReport {
  std::string theorem;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::uint64_t seed = 0;
  std::size_t max_rank = 0;
  /// Named counters collected across trials (e.g. how often a composite
  /// differs from the identity). Informational only.
  std::map<std::string, std::size_t> observations;
  /// Instance and message of the lowest-numbered failing trial.
  std::optional<nlohmann::json> counterexample;
};

/// identities, sdr, bpl, vertical, iteration, tensor, homology.
const std::vector<std::string>& suite_names();
/// Theorem names in a suite; "all" lists every theorem.
std::vector<std::string> suite_theorems(const std::string& suite);

/// Runs one named theorem over `options.trials` generated instances. Trial i
/// draws its instance from derive_seed(options.seed, theorem id, i), so the
/// report does not depend on the thread count.
CheckReport run_theorem(const std::string& theorem, const CheckOptions& options);
std::vector<CheckReport> run_suite(const std::string& suite, const CheckOptions& options);

nlohmann::json to_json(const CheckReport& report);

}  // namespace hpt
