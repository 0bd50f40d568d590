#pragma once

// Generated-case checks shared by the unit suite and the acceptance runner.

#include <cstdint>
#include <string>
#include <vector>

namespace props {

struct Options {
  // Path to the stub adapter executable; adapter properties are skipped
  // (and reported as failed) when empty.
  std::string stub_adapter;
  std::uint64_t seed = 20240607;
};

struct Result {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
};

using PropertyFn = Result (*)(const Options&);

struct Property {
  const char* name;
  PropertyFn fn;
};

const std::vector<Property>& all();
Result run(const std::string& name, const Options& options);

// Individual cases, for the acceptance criteria.

// Largest |engine - oracle| over coefficients and intercepts of every class
// for one random instance (d <= 10, exhaustive, lambda from {0, 0.1, 1}).
double oracle_case_error(std::uint64_t seed);
// Largest deviation from weight = f(original) - f(empty), intercept =
// f(empty) for a single-token text under a random black box.
double single_token_case_error(std::uint64_t seed);
// Whether every ranked surrogate weight has the sign of its generating
// coefficient, for a linear-logit black box on 3-8 tokens.
bool sign_recovery_trial(std::uint64_t seed);
// Max relative error of the softmax analytic gradient against central
// differences with step 1e-5 on one random small model.
double gradient_case_error(std::uint64_t seed);

}  // namespace props
