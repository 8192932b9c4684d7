#include "boxkernel/closedform.hpp"

#include <cmath>
#include <numbers>

#include "boxkernel/errors.hpp"
#include "boxkernel/specfun.hpp"
#include "boxkernel/detail/summation.hpp"

namespace boxkernel::closedform {

namespace {

constexpr std::size_t kMaxAdditionTerms = 20000;

// 1 - cos(d) without cancellation near d = 0.
double one_minus_cos(double d) {
  const double h = std::sin(0.5 * d);
  return 2.0 * h * h;
}

// ln of 2^{2nu} Gamma(nu)^2 / sqrt(2 pi lambda) (sin t sin t')^nu.
double log_lhs_prefactor(double nu, double sin_product, double lambda) {
  return 2.0 * nu * std::numbers::ln2 + 2.0 * specfun::log_gamma(nu) -
         0.5 * std::log(2.0 * std::numbers::pi * lambda) + nu * std::log(sin_product);
}

// ln of n! (nu+n) / Gamma(2nu+n).
double log_lhs_coefficient(std::size_t n, double nu) {
  const double dn = static_cast<double>(n);
  return specfun::log_gamma(dn + 1.0) + std::log(nu + dn) - specfun::log_gamma(2.0 * nu + dn);
}

}  // namespace

KernelEstimate kernel_closed(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda) {
  const double t = theta.value();
  const double tp = theta_p.value();
  const double l = lambda.value();
  const double sin_product = std::sin(t) * std::sin(tp);
  const double s = sin_product / l;
  const double value = std::sqrt(sin_product) / l * std::exp(-one_minus_cos(t - tp) / l - 0.125 * l) *
                       specfun::bessel_i_scaled(nu.value() - 0.5, s);
  KernelEstimate est;
  est.value = {value, 0.0};
  est.method = Method::closed_form;
  est.terms_used = 1;
  return est;
}

double addition_formula_lhs(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                            std::size_t n_terms) {
  if (n_terms == 0) {
    throw DomainError("addition_formula_lhs: needs at least one term");
  }
  const double v = nu.value();
  const double z = 1.0 / lambda.value();
  const double sin_product = std::sin(theta.value()) * std::sin(theta_p.value());
  const double log_pre = log_lhs_prefactor(v, sin_product, lambda.value());
  const auto ca = specfun::gegenbauer_sequence(n_terms - 1, v, std::cos(theta.value()));
  const auto cb = specfun::gegenbauer_sequence(n_terms - 1, v, std::cos(theta_p.value()));

  detail::CompensatedSum<double> sum;
  for (std::size_t n = 0; n < n_terms; ++n) {
    const double bessel = specfun::bessel_i_scaled(v + static_cast<double>(n), z);
    sum.add(std::exp(log_pre + log_lhs_coefficient(n, v)) * bessel * (ca[n] * cb[n]));
  }
  return sum.value();
}

double addition_formula_rhs(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda) {
  const double t = theta.value();
  const double tp = theta_p.value();
  const double l = lambda.value();
  const double sin_product = std::sin(t) * std::sin(tp);
  // cos t cos t' - 1 = -(1 - cos(t - t')) - sin t sin t'; the last piece is the Bessel scaling.
  return std::sqrt(sin_product) / l * std::exp(-one_minus_cos(t - tp) / l) *
         specfun::bessel_i_scaled(nu.value() - 0.5, sin_product / l);
}

std::size_t addition_formula_terms(PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                                   double rel_tol) {
  const double v = nu.value();
  const double z = 1.0 / lambda.value();
  const double x = std::cos(theta.value());
  const double xp = std::cos(theta_p.value());
  const double sin_product = std::sin(theta.value()) * std::sin(theta_p.value());
  const double log_pre = log_lhs_prefactor(v, sin_product, lambda.value());

  double c_prev = 1.0, cp_prev = 1.0;
  double c = 2.0 * v * x, cp = 2.0 * v * xp;
  detail::CompensatedSum<double> partial;
  for (std::size_t n = 0; n < kMaxAdditionTerms; ++n) {
    const double dn = static_cast<double>(n);
    const double ca = n == 0 ? 1.0 : c;
    const double cb = n == 0 ? 1.0 : cp;
    const double weight = std::exp(log_pre + log_lhs_coefficient(n, v)) * specfun::bessel_i_scaled(v + dn, z);
    partial.add(weight * ca * cb);
    const double at_one = specfun::gegenbauer_at_one(n, v);
    if (dn > z && weight * at_one * at_one < rel_tol * std::abs(partial.value())) {
      return n + 1;
    }
    if (n >= 1) {
      const double next = (2.0 * (dn + v) * x * c - (dn + 2.0 * v - 1.0) * c_prev) / (dn + 1.0);
      const double next_p = (2.0 * (dn + v) * xp * cp - (dn + 2.0 * v - 1.0) * cp_prev) / (dn + 1.0);
      c_prev = c;
      cp_prev = cp;
      c = next;
      cp = next_p;
    }
  }
  return kMaxAdditionTerms;
}

}  // namespace boxkernel::closedform
