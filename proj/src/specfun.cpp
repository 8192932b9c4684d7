#include "boxkernel/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "boxkernel/errors.hpp"
#include "detail/real_math.hpp"
#include "boxkernel/detail/summation.hpp"

namespace boxkernel::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below this the reflected e^{-2z} branch of the Hankel form is not negligible.
constexpr double kMinHankelArgument = 20.0;
constexpr int kMaxHankelTerms = 200;

struct Estimate {
  double value;
  double rel_error;
};

Estimate hankel_expansion(double order, double z) {
  const double mu4 = 4.0 * order * order;
  detail::CompensatedSum<double> sum;
  sum.add(1.0);
  double term = 1.0;
  double largest = 1.0;
  double omitted = 0.0;
  bool decreasing = false;
  for (int k = 1; k <= kMaxHankelTerms; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu4 - odd * odd) / (8.0 * k * z);
    if (next == 0.0) {  // half-integer order: the series terminates
      omitted = 0.0;
      break;
    }
    // Large orders make the first terms grow; only growth after the terms
    // have started shrinking marks the asymptotic divergence.
    if (std::abs(next) >= std::abs(term)) {
      if (decreasing) {
        omitted = std::abs(next);
        break;
      }
    } else {
      decreasing = true;
    }
    if (std::abs(next) > 1e100) {
      return {0.0, std::numeric_limits<double>::infinity()};
    }
    term = next;
    sum.add(term);
    largest = std::max(largest, std::abs(term));
    omitted = std::abs(term);
    if (std::abs(term) < 0.25 * kEps * std::abs(sum.value())) {
      break;
    }
  }
  const double s = sum.value();
  const double value = s / std::sqrt(2.0 * std::numbers::pi * z);
  if (!(s > 0.0)) {
    return {value, std::numeric_limits<double>::infinity()};
  }
  const double err = (omitted + 4.0 * kEps * largest) / s + std::exp(-2.0 * z);
  return {value, err};
}

// Index of the largest ascending-series term (z^2/4)^k / (k! Gamma(k + order + 1)).
double series_peak(double order, double z) {
  const double k = 0.5 * (std::hypot(order, z) - (order + 2.0));
  return std::max(0.0, std::ceil(k));
}

double series_peak_log(double order, double z, double kp) {
  return (2.0 * kp + order) * std::log(0.5 * z) - std::lgamma(kp + 1.0) - std::lgamma(kp + order + 1.0) - z;
}

double series_error_estimate(double order, double z) {
  const double kp = series_peak(order, z);
  const double magnitude = std::abs((2.0 * kp + order) * std::log(0.5 * z)) + std::lgamma(kp + 1.0) +
                           std::lgamma(kp + order + 1.0) + z;
  return kEps * (magnitude + std::sqrt(kp + 1.0) + 2.0);
}

double power_series(double order, double z) {
  const double q = 0.25 * z * z;
  const double kp = series_peak(order, z);
  const double log_peak = series_peak_log(order, z, kp);

  // Terms relative to the peak: walk up, then down.
  detail::CompensatedSum<double> sum;
  sum.add(1.0);
  double t = 1.0;
  for (double k = kp;; k += 1.0) {
    t *= q / ((k + 1.0) * (k + order + 1.0));
    sum.add(t);
    if (t < 0.125 * kEps * sum.value()) break;
  }
  t = 1.0;
  for (double k = kp; k > 0.0; k -= 1.0) {
    t *= k * (k + order) / q;
    sum.add(t);
    if (t < 0.125 * kEps * sum.value()) break;
  }
  return std::exp(log_peak) * sum.value();
}

void require_bessel_domain(double order, double z) {
  if (!(order >= 0.0) || !std::isfinite(order)) {
    throw DomainError("bessel_i_scaled: order must be finite and >= 0");
  }
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("bessel_i_scaled: argument must be finite and > 0");
  }
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be > 0");
  }
  return std::lgamma(x);
}

std::vector<double> gegenbauer_sequence(std::size_t nmax, double nu, double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("gegenbauer_sequence: x must lie in [-1, 1]");
  }
  if (!(nu >= 0.5)) {
    throw DomainError("gegenbauer_sequence: nu must be >= 1/2");
  }
  std::vector<double> out(nmax + 1);
  detail::gegenbauer_recurrence<double>(nmax, nu, x, [&](unsigned long n, double v) { out[n] = v; });
  return out;
}

double gegenbauer_at_one(std::size_t n, double nu) {
  if (!(nu >= 0.5)) {
    throw DomainError("gegenbauer_at_one: nu must be >= 1/2");
  }
  const double dn = static_cast<double>(n);
  return std::exp(log_gamma(dn + 2.0 * nu) - log_gamma(dn + 1.0) - log_gamma(2.0 * nu));
}

BesselRegime bessel_regime(double order, double z) {
  require_bessel_domain(order, z);
  if (z < kMinHankelArgument) return BesselRegime::power_series;
  const Estimate h = hankel_expansion(order, z);
  return h.rel_error <= series_error_estimate(order, z) ? BesselRegime::hankel : BesselRegime::power_series;
}

double bessel_i_scaled(double order, double z) {
  require_bessel_domain(order, z);
  if (z >= kMinHankelArgument) {
    const Estimate h = hankel_expansion(order, z);
    if (h.rel_error <= series_error_estimate(order, z)) {
      return h.value;
    }
  }
  return power_series(order, z);
}

double bessel_asymptotic_leading(double order, double z, bool keep_reflected) {
  require_bessel_domain(order, z);
  const double c = (4.0 * order * order - 1.0) / (8.0 * z);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * z);
  double value = norm * std::exp(z - c);
  if (keep_reflected) {
    // cos((order + 1/2) pi) with exact zeros and signs at (half-)integers
    double half_turns = std::fmod(order + 0.5, 2.0);
    double phase;
    if (half_turns == 0.0) {
      phase = 1.0;
    } else if (half_turns == 1.0) {
      phase = -1.0;
    } else if (half_turns == 0.5 || half_turns == 1.5) {
      phase = 0.0;
    } else {
      phase = std::cos(std::numbers::pi * half_turns);
    }
    value += phase * norm * std::exp(-z + c);
  }
  return value;
}

}  // namespace boxkernel::specfun
