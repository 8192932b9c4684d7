#pragma once

// Eigenfunction expansion of the Euclidean kernel,
//   K(theta_a, theta_b; lambda) = sum_n exp(-lambda (n + nu)^2 / 2) phi_n(theta_a) phi_n(theta_b),
// normalized for integration over theta.

#include <cstddef>
#include <vector>

#include "boxkernel/types.hpp"

namespace boxkernel::spectral {

struct TruncationPolicy {
  enum class Mode { fixed_terms, target_abs_error };

  Mode mode = Mode::target_abs_error;
  std::size_t n_terms = 64;    // fixed_terms
  double epsilon_tail = 1e-30; // target_abs_error
  std::size_t n_cap = 100000;

  static TruncationPolicy fixed(std::size_t n, std::size_t cap = 100000) {
    return {Mode::fixed_terms, n, 1e-30, cap};
  }
  static TruncationPolicy target(double epsilon, std::size_t cap = 100000) {
    return {Mode::target_abs_error, 64, epsilon, cap};
  }
};

/// lambda (n + nu)^2 / 2, the decay exponent of mode n.
double eigenvalue_exponent(std::size_t n, PotentialParameter nu, DimensionlessTime lambda);

/// phi_n(theta) = 2^nu Gamma(nu) sqrt((n+nu) n! / (2 pi Gamma(n+2nu))) sin^nu(theta) C_n^nu(cos theta).
double eigenfunction(std::size_t n, PotentialParameter nu, Angle theta);

/// phi_0(theta) .. phi_nmax(theta), sharing one Gegenbauer recurrence.
std::vector<double> eigenfunction_sequence(std::size_t nmax, PotentialParameter nu, Angle theta);

/// Upper bound on sum_{n >= N} exp(-lambda (n+nu)^2 / 2) |phi_n(a) phi_n(b)|, uniform in a, b.
/// See docs/numerics.md for the derivation.
double truncation_tail_bound(PotentialParameter nu, DimensionlessTime lambda, std::size_t n_terms);

/// Number of terms the policy asks for. Throws PolicyUnresolvable past n_cap.
std::size_t resolve_truncation(PotentialParameter nu, DimensionlessTime lambda, const TruncationPolicy& policy);

/// Truncated eigenfunction sum. Terms are formed and accumulated in 113-bit
/// precision, so values far below the largest term (well separated points,
/// small lambda) keep full double accuracy.
KernelEstimate kernel_spectral(PotentialParameter nu, Angle theta_a, Angle theta_b, DimensionlessTime lambda,
                               const TruncationPolicy& policy = {});

}  // namespace boxkernel::spectral
