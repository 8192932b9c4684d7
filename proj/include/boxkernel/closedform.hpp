#pragma once

// Closed short-time kernel built from I_{nu-1/2}, and the two sides of the
// Gegenbauer-Bessel addition formula it rests on.

#include <cstddef>

#include "boxkernel/types.hpp"

namespace boxkernel::closedform {

/// (sin t sin t')^{1/2} / lambda * exp(-(1 - cos t cos t') / lambda - lambda / 8) * I_{nu-1/2}(sin t sin t' / lambda).
/// The exponent is regrouped as -(1 - cos(t - t'))/lambda + s with s = sin t sin t' / lambda,
/// so only exp(-s) I(s) is ever formed.
KernelEstimate kernel_closed(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda);

/// Left side of the addition formula times exp(-1/lambda):
///   2^{2nu} Gamma(nu)^2 / sqrt(2 pi lambda) (sin t sin t')^nu
///   * sum_{n<N} n! (nu+n) / Gamma(2nu+n) e^{-1/lambda} I_{nu+n}(1/lambda) C_n(cos t) C_n(cos t').
double addition_formula_lhs(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                            std::size_t n_terms);

/// Right side times exp(-1/lambda):
///   (sin t sin t')^{1/2} / lambda * exp((cos t cos t' - 1) / lambda) * I_{nu-1/2}(sin t sin t' / lambda).
double addition_formula_rhs(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda);

/// Smallest N, past the peak of the Bessel factor, whose term bound (|C_n| <= C_n(1))
/// falls below rel_tol times the partial sum.
std::size_t addition_formula_terms(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                                   double rel_tol = 1e-17);

}  // namespace boxkernel::closedform
