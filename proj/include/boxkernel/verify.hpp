#pragma once

// Quadrature on (0, pi), identity checks, and the cross-method comparison harness.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "boxkernel/pathsum.hpp"
#include "boxkernel/spectral.hpp"
#include "boxkernel/types.hpp"
#include "boxkernel/detail/summation.hpp"

namespace boxkernel::verify {

struct QuadratureRule {
  std::vector<double> nodes;   // strictly inside (0, pi)
  std::vector<double> weights; // positive, summing to pi
  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Legendre rule mapped affinely from (-1, 1) onto (0, pi). npoints >= 2.
QuadratureRule gauss_legendre_on_0_pi(std::size_t npoints);

/// sum_i w_i f(x_i), compensated.
template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
  detail::CompensatedSum<double> sum;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    sum.add(rule.weights[i] * f(rule.nodes[i]));
  }
  return sum.value();
}

/// G[n][m] = <phi_n, phi_m> under the rule, 0 <= n, m <= nmax.
std::vector<std::vector<double>> gram_matrix(PotentialParameter nu, std::size_t nmax, const QuadratureRule& rule);

/// max_{n,m <= nmax} |<phi_n, phi_m> - delta_nm| under the rule.
double check_orthonormality(PotentialParameter nu, std::size_t nmax, const QuadratureRule& rule);

struct OrthonormalityCertificate {
  std::size_t npoints = 0;      // coarser of the two agreeing rules
  double deviation = 0.0;       // check_orthonormality under that rule
  double refinement_gap = 0.0;  // max |G_npoints - G_2npoints| over all entries
};

/// Starts at 2 nmax + 30 nodes and doubles until the Gram matrices of consecutive rules agree to tol, or the
/// rule would exceed max_points. Non-integer 2 nu leaves a weak endpoint singularity that needs the extra nodes.
OrthonormalityCertificate certify_orthonormality(PotentialParameter nu, std::size_t nmax, double tol,
                                                 std::size_t max_points = 4096);

/// |e^{-lambda mu^2/2} - sqrt(2 pi / lambda) e^{-1/lambda} I_mu(1/lambda) e^{-lambda/8}| / e^{-lambda mu^2/2}, mu = n + nu.
double check_gaussian_bessel_link(std::size_t n, PotentialParameter nu, DimensionlessTime lambda);

/// Relative gap between int K(a, t; l1) K(t, b; l2) dt (by the rule) and K(a, b; l1 + l2), spectral kernels.
double check_semigroup(PotentialParameter nu, DimensionlessTime lambda1, DimensionlessTime lambda2, Angle theta_a,
                       Angle theta_b, const QuadratureRule& rule, const spectral::TruncationPolicy& policy = {});

struct EvaluationConfig {
  spectral::TruncationPolicy truncation;
  pathsum::PathSumConfig path_sum;
};

/// Dispatch to one kernel method. pathsum-nu1 and pathsum-nu2 require nu = 1 and nu = 2.
KernelEstimate evaluate(Method method, PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                        const EvaluationConfig& config = {});

struct GridPoint {
  double theta = 0.0;
  double theta_p = 0.0;
  double lambda = 0.0;
};

/// Deviations of method_b from the reference method_a on real parts:
///   abs_dev = |Re b - Re a|,  rel_dev = abs_dev / |Re a|.
/// Rows are ordered angle pair by angle pair, each running through the lambda chain.
struct ComparisonReport {
  Method method_a = Method::spectral;
  Method method_b = Method::spectral;
  std::vector<GridPoint> grid;
  std::vector<std::complex<double>> values_a;
  std::vector<std::complex<double>> values_b;
  std::vector<double> abs_dev;
  std::vector<double> rel_dev;
  double max_rel_dev = 0.0;
  /// rel_dev[i] / rel_dev[i+1] along each angle pair's chain; only for halving chains.
  std::optional<std::vector<double>> convergence_ratios;
  /// |Im| / |Re| of the complex-valued method, one per row.
  std::optional<std::vector<double>> im_over_re;
};

using AnglePair = std::pair<Angle, Angle>;

/// Evaluates both methods on angle_pairs x lambda_chain. The chain must be strictly decreasing.
ComparisonReport compare_methods(PotentialParameter nu, std::span<const AnglePair> angle_pairs,
                                 std::span<const DimensionlessTime> lambda_chain, Method method_a, Method method_b,
                                 const EvaluationConfig& config = {});

/// Recomputes abs_dev, rel_dev, max_rel_dev, convergence_ratios and im_over_re from
/// the methods, grid and values. compare_methods and the CSV reader both go through here.
void derive_report_fields(ComparisonReport& report);

/// Latin hypercube design on [0, 1)^dims with stratum midpoints; deterministic in seed.
std::vector<std::vector<double>> latin_hypercube(std::size_t samples, std::size_t dims, std::uint64_t seed);

/// theta_i = i pi / (m + 1), i = 1..m, all m^2 ordered pairs.
std::vector<AnglePair> interior_grid(std::size_t m);

}  // namespace boxkernel::verify
