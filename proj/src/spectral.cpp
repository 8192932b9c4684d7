#include "boxkernel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "boxkernel/errors.hpp"
#include "boxkernel/specfun.hpp"
#include "detail/real_math.hpp"
#include "boxkernel/detail/summation.hpp"

namespace boxkernel::spectral {

namespace {

using detail::quad;

// ln of 2^nu Gamma(nu) sqrt((n+nu) n! / (2 pi Gamma(n+2nu))).
double log_normalization(std::size_t n, double nu) {
  const double dn = static_cast<double>(n);
  return nu * std::numbers::ln2 + specfun::log_gamma(nu) +
         0.5 * (std::log(dn + nu) + specfun::log_gamma(dn + 1.0) - std::log(2.0 * std::numbers::pi) -
                specfun::log_gamma(dn + 2.0 * nu));
}

// ln of the majorant b_n = exp(-lambda (n+nu)^2/2) N_n^2 C_n(1)^2.
double log_tail_term(std::size_t n, double nu, double lambda) {
  const double dn = static_cast<double>(n);
  const double mu = dn + nu;
  return 2.0 * nu * std::numbers::ln2 + 2.0 * specfun::log_gamma(nu) + std::log(mu) +
         specfun::log_gamma(dn + 2.0 * nu) - std::log(2.0 * std::numbers::pi) - specfun::log_gamma(dn + 1.0) -
         2.0 * specfun::log_gamma(2.0 * nu) - 0.5 * lambda * mu * mu;
}

// b_{n+1} / b_n; nonincreasing in n for nu >= 1/2.
double tail_ratio(std::size_t n, double nu, double lambda) {
  const double dn = static_cast<double>(n);
  return (dn + 1.0 + nu) / (dn + nu) * (dn + 2.0 * nu) / (dn + 1.0) *
         std::exp(-0.5 * lambda * (2.0 * dn + 2.0 * nu + 1.0));
}

}  // namespace

double eigenvalue_exponent(std::size_t n, PotentialParameter nu, DimensionlessTime lambda) {
  const double mu = static_cast<double>(n) + nu.value();
  return 0.5 * lambda.value() * mu * mu;
}

double eigenfunction(std::size_t n, PotentialParameter nu, Angle theta) {
  const double x = std::cos(theta.value());
  const double c = specfun::gegenbauer_sequence(n, nu.value(), x).back();
  return std::exp(log_normalization(n, nu.value()) + nu.value() * std::log(std::sin(theta.value()))) * c;
}

std::vector<double> eigenfunction_sequence(std::size_t nmax, PotentialParameter nu, Angle theta) {
  auto out = specfun::gegenbauer_sequence(nmax, nu.value(), std::cos(theta.value()));
  const double log_sin = nu.value() * std::log(std::sin(theta.value()));
  for (std::size_t n = 0; n <= nmax; ++n) {
    out[n] *= std::exp(log_normalization(n, nu.value()) + log_sin);
  }
  return out;
}

double truncation_tail_bound(PotentialParameter nu, DimensionlessTime lambda, std::size_t n_terms) {
  const double v = nu.value();
  const double l = lambda.value();
  double log_b = log_tail_term(n_terms, v, l);
  double total = 0.0;
  // Sum explicitly until the ratio drops below one, then close with a geometric series.
  for (std::size_t n = n_terms;; ++n) {
    const double r = tail_ratio(n, v, l);
    if (r < 1.0) {
      total += std::exp(log_b) / (1.0 - r);
      break;
    }
    total += std::exp(log_b);
    log_b += std::log(r);
  }
  return total;
}

std::size_t resolve_truncation(PotentialParameter nu, DimensionlessTime lambda, const TruncationPolicy& policy) {
  if (policy.mode == TruncationPolicy::Mode::fixed_terms) {
    if (policy.n_terms == 0 || policy.n_terms > policy.n_cap) {
      throw PolicyUnresolvable("fixed truncation of " + std::to_string(policy.n_terms) +
                               " terms is outside [1, n_cap=" + std::to_string(policy.n_cap) + "]");
    }
    return policy.n_terms;
  }
  if (!(policy.epsilon_tail > 0.0)) {
    throw PolicyUnresolvable("epsilon_tail must be > 0");
  }
  const auto ok = [&](std::size_t n) { return truncation_tail_bound(nu, lambda, n) <= policy.epsilon_tail; };
  if (ok(1)) return 1;
  std::size_t lo = 1;
  std::size_t hi = 2;
  while (!ok(hi)) {
    if (hi >= policy.n_cap) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "spectral tail bound stays above %g up to n_cap=%zu terms (lambda too small)",
                    policy.epsilon_tail, policy.n_cap);
      throw PolicyUnresolvable(msg);
    }
    lo = hi;
    hi = std::min(2 * hi, policy.n_cap);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

KernelEstimate kernel_spectral(PotentialParameter nu, Angle theta_a, Angle theta_b, DimensionlessTime lambda,
                               const TruncationPolicy& policy) {
  namespace rm = detail::rm;
  const std::size_t n_terms = resolve_truncation(nu, lambda, policy);

  const quad v = nu.value();
  const quad l = lambda.value();
  const quad a = theta_a.value();
  const quad b = theta_b.value();
  const quad log_sin = v * (rm::log(rm::sin(a)) + rm::log(rm::sin(b)));

  // 2 ln N_n, advanced by the ratio of consecutive normalizations.
  quad log_norm2 = quad(2) * (v * rm::log(quad(2)) + rm::lgamma(v)) + rm::log(v) -
                   rm::log(quad(2) * rm::pi<quad>()) - rm::lgamma(quad(2) * v);

  std::vector<quad> ca(n_terms);
  detail::gegenbauer_recurrence<quad>(n_terms - 1, v, rm::cos(a), [&](unsigned long n, quad c) { ca[n] = c; });

  detail::CompensatedSum<quad> sum;
  detail::gegenbauer_recurrence<quad>(n_terms - 1, v, rm::cos(b), [&](unsigned long n, quad cb) {
    const quad dn = quad(static_cast<double>(n));
    const quad mu = dn + v;
    sum.add(rm::exp(-l * mu * mu / quad(2) + log_norm2 + log_sin) * (ca[n] * cb));
    log_norm2 += rm::log((mu + quad(1)) / mu) + rm::log(dn + quad(1)) - rm::log(dn + quad(2) * v);
  });

  KernelEstimate est;
  est.value = {static_cast<double>(sum.value()), 0.0};
  est.method = Method::spectral;
  est.terms_used = n_terms;
  est.tail_bound = truncation_tail_bound(nu, lambda, n_terms);
  return est;
}

}  // namespace boxkernel::spectral
