#pragma once

// Special functions used by the kernel modules: log-gamma, Gegenbauer
// polynomials and the exponentially scaled modified Bessel function I.

#include <cstddef>
#include <vector>

namespace boxkernel::specfun {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// C_0^nu(x) .. C_nmax^nu(x) by upward recurrence. Requires |x| <= 1 and nu >= 1/2.
std::vector<double> gegenbauer_sequence(std::size_t nmax, double nu, double x);

/// C_n^nu(1) = Gamma(n + 2nu) / (n! Gamma(2nu)), evaluated in log space.
double gegenbauer_at_one(std::size_t n, double nu);

/// exp(-z) I_order(z) for order >= 0 and z > 0.
///
/// Two regimes. The ascending series is summed outward from its largest term
/// with that term's logarithm computed once, so it never overflows; its error is
/// rounding only, roughly eps times the magnitude of that logarithm. For z >= 20
/// the Hankel expansion  e^{-z} I ~ (2 pi z)^{-1/2} sum (-1)^k a_k(order) / z^k
/// is tried as well; its error is the first omitted term plus cancellation
/// among the terms (the e^{-2z} reflected contribution is below 4e-18 there).
/// Whichever regime has the smaller estimated error is used.
double bessel_i_scaled(double order, double z);

/// Leading large-z form  e^z / sqrt(2 pi z) * exp(-(4 order^2 - 1) / (8 z)), unscaled.
/// With keep_reflected, adds cos((order + 1/2) pi) e^{-z} / sqrt(2 pi z) * exp(+(4 order^2 - 1) / (8 z)),
/// the real part of the exponentially small reflected branch; exact for
/// half-integer orders. Overflows to +inf past z ~ 709.
double bessel_asymptotic_leading(double order, double z, bool keep_reflected = false);

/// Which regime bessel_i_scaled picks for (order, z). Exposed for tests and docs.
enum class BesselRegime { power_series, hankel };
BesselRegime bessel_regime(double order, double z);

}  // namespace boxkernel::specfun
