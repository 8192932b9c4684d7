#include "boxkernel/pathsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "boxkernel/errors.hpp"
#include "boxkernel/detail/summation.hpp"

namespace boxkernel::pathsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWallMargin = 0.05;

void require_k_max(const PathSumConfig& config) {
  if (config.k_max < 1) {
    throw DomainError("path sum needs k_max >= 1");
  }
}

double gauss_exponent(double separation, int k, double lambda) {
  const double d = separation - 2.0 * k * kPi;
  return -(d * d) / (2.0 * lambda);
}

// lambda nu(nu-1) / (2 sin t sin t'); enters with - on even and + on odd terms.
double potential_shift(double coupling, double theta, double theta_p, double lambda) {
  return 0.5 * lambda * coupling / (std::sin(theta) * std::sin(theta_p));
}

double normalization(double lambda) { return 1.0 / std::sqrt(2.0 * kPi * lambda); }

// Real-coefficient version of resum() for integer nu, using identical arithmetic
// so the results agree with the complex route bit for bit.
double real_reflection_sum(double theta, double theta_p, double lambda, double coupling, double odd_sign, int k_max) {
  const double shift = potential_shift(coupling, theta, theta_p, lambda);
  detail::CompensatedSum<double> sum;
  for (int k = -k_max; k <= k_max; ++k) {
    sum.add(std::exp(gauss_exponent(theta - theta_p, k, lambda) + -shift));
    sum.add(odd_sign * std::exp(gauss_exponent(theta + theta_p, k, lambda) + shift));
  }
  return sum.value() * normalization(lambda);
}

KernelEstimate make_estimate(std::complex<double> value, Method method, int k_max, Angle theta, Angle theta_p) {
  KernelEstimate est;
  est.value = value;
  est.method = method;
  est.terms_used = static_cast<std::size_t>(2 * (2 * k_max + 1));
  est.near_boundary = near_boundary(theta, theta_p);
  return est;
}

}  // namespace

bool near_boundary(Angle theta, Angle theta_p) noexcept {
  const double closest = std::min({theta.value(), kPi - theta.value(), theta_p.value(), kPi - theta_p.value()});
  return closest < kWallMargin;
}

std::complex<double> reflection_phase(int k, Parity parity, PotentialParameter nu, Prescription prescription) {
  double m;
  if (prescription == Prescription::winding) {
    m = parity == Parity::even ? 2.0 * k : 2.0 * k - 1.0;
  } else {
    m = parity == Parity::even ? 0.0 : 1.0;
  }
  // Phase angle in half turns, reduced to [0, 2).
  double half_turns = std::fmod(m * nu.value(), 2.0);
  if (half_turns < 0.0) half_turns += 2.0;
  if (half_turns == 0.0) return {1.0, 0.0};
  if (half_turns == 0.5) return {0.0, 1.0};
  if (half_turns == 1.0) return {-1.0, 0.0};
  if (half_turns == 1.5) return {0.0, -1.0};
  return std::polar(1.0, kPi * half_turns);
}

std::vector<ReflectionTerm> decompose(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                                      const PathSumConfig& config) {
  require_k_max(config);
  const double t = theta.value();
  const double tp = theta_p.value();
  const double l = lambda.value();
  const double shift = potential_shift(nu.coupling(), t, tp, l);

  std::vector<ReflectionTerm> terms;
  terms.reserve(static_cast<std::size_t>(2 * (2 * config.k_max + 1)));
  for (int k = -config.k_max; k <= config.k_max; ++k) {
    terms.push_back({k, Parity::even, reflection_phase(k, Parity::even, nu, config.prescription),
                     gauss_exponent(t - tp, k, l), -shift});
    terms.push_back({k, Parity::odd, reflection_phase(k, Parity::odd, nu, config.prescription),
                     gauss_exponent(t + tp, k, l), shift});
  }
  return terms;
}

std::complex<double> resum(const std::vector<ReflectionTerm>& terms, DimensionlessTime lambda) {
  detail::CompensatedSum<double> re;
  detail::CompensatedSum<double> im;
  for (const auto& term : terms) {
    const double magnitude = std::exp(term.gauss_exponent + term.potential_correction);
    re.add(term.phase.real() * magnitude);
    im.add(term.phase.imag() * magnitude);
  }
  const double norm = normalization(lambda.value());
  return {re.value() * norm, im.value() * norm};
}

KernelEstimate kernel_pathsum_nu1(Angle theta, Angle theta_p, DimensionlessTime lambda, const PathSumConfig& config) {
  require_k_max(config);
  const double value = real_reflection_sum(theta.value(), theta_p.value(), lambda.value(), 0.0, -1.0, config.k_max);
  return make_estimate({value, 0.0}, Method::path_sum_nu1, config.k_max, theta, theta_p);
}

KernelEstimate kernel_pathsum_nu2(Angle theta, Angle theta_p, DimensionlessTime lambda, const PathSumConfig& config) {
  require_k_max(config);
  const double value = real_reflection_sum(theta.value(), theta_p.value(), lambda.value(), 2.0, 1.0, config.k_max);
  return make_estimate({value, 0.0}, Method::path_sum_nu2, config.k_max, theta, theta_p);
}

KernelEstimate kernel_pathsum_general(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                                      const PathSumConfig& config) {
  const auto value = resum(decompose(nu, theta, theta_p, lambda, config), lambda);
  return make_estimate(value, Method::path_sum_general, config.k_max, theta, theta_p);
}

}  // namespace boxkernel::pathsum
