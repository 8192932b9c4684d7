#pragma once

// Decomposition of the short-time kernel into Gaussian contributions from
// paths with different numbers of wall reflections. Saddles sit at
// theta - theta' = 2k pi (even class) and theta + theta' = 2k pi (odd class).

#include <complex>
#include <vector>

#include "boxkernel/types.hpp"

namespace boxkernel::pathsum {

enum class Parity { even, odd };

/// Branch choice for arg(sin t sin t') away from the original box.
///  winding: even saddles pick up e^{2k nu pi i}, odd saddles e^{(2k-1) nu pi i}.
///  principal: even saddles 1, odd saddles e^{nu pi i}.
enum class Prescription { winding, principal };

struct ReflectionTerm {
  int k = 0;
  Parity parity = Parity::even;
  std::complex<double> phase{1.0, 0.0};
  double gauss_exponent = 0.0;        // -(t -/+ t' - 2k pi)^2 / (2 lambda)
  double potential_correction = 0.0; // -/+ lambda nu(nu-1) / (2 sin t sin t')
};

struct PathSumConfig {
  int k_max = 8;  // sum over |k| <= k_max
  Prescription prescription = Prescription::winding;
};

/// e^{i pi m nu} for the m fixed by (k, parity, prescription). Multiples of
/// half a turn are returned exactly, so integer nu gives exactly +-1.
std::complex<double> reflection_phase(int k, Parity parity, PotentialParameter nu, Prescription prescription);

/// Free particle in a box: Dirichlet image sum.
KernelEstimate kernel_pathsum_nu1(Angle theta, Angle theta_p, DimensionlessTime lambda, const PathSumConfig& config = {});

/// nu = 2: both reflection classes enter with coefficient +1.
KernelEstimate kernel_pathsum_nu2(Angle theta, Angle theta_p, DimensionlessTime lambda, const PathSumConfig& config = {});

/// General nu: complex sum with reflection phases. The imaginary part is kept.
KernelEstimate kernel_pathsum_general(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                                      const PathSumConfig& config = {});

/// All terms with |k| <= k_max, ordered by k ascending, even before odd.
std::vector<ReflectionTerm> decompose(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                                      const PathSumConfig& config = {});

/// (2 pi lambda)^{-1/2} sum phase * exp(gauss_exponent + potential_correction), accumulated in
/// list order. kernel_pathsum_general is exactly resum(decompose(...)).
std::complex<double> resum(const std::vector<ReflectionTerm>& terms, DimensionlessTime lambda);

/// Within 0.05 of a wall, where the potential correction stops being small.
bool near_boundary(Angle theta, Angle theta_p) noexcept;

}  // namespace boxkernel::pathsum
