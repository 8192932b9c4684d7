#pragma once
// Named invariant checks behind `boxkernel verify`.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "boxkernel/types.hpp"
#include "boxkernel/verify.hpp"

namespace boxkernel::suites {

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  std::string bound;  // e.g. "<= 1e-10", "< 1", "in [2, 8]"
  bool passed = false;
};

/// orthonormality, addition, link, nu1, phases, nu2, general, semigroup, closed
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Unknown names throw DomainError.
std::vector<CheckResult> run_suite(std::string_view name, PotentialParameter nu,
                                   const verify::EvaluationConfig& config = {});

/// Interior points shared by the decomposition and convergence suites.
std::vector<verify::AnglePair> probe_points();

/// {0.4, 0.2, 0.1, 0.05}
std::vector<DimensionlessTime> default_lambda_chain();

/// Largest d[i+1] / d[i]; pairs where both sit at or below floor count as 0 (an exact identity has nothing to
/// decrease). Strict decrease along the chain means the result is < 1.
double worst_step_ratio(const std::vector<double>& d, double floor = 0.0);

}  // namespace boxkernel::suites
