#include "boxkernel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "boxkernel/closedform.hpp"
#include "boxkernel/errors.hpp"
#include "boxkernel/specfun.hpp"

namespace boxkernel::verify {

namespace {

constexpr double kPi = std::numbers::pi;

// |Im| / |Re|, with 0/0 read as 0.
double im_over_re_of(std::complex<double> v) {
  const double re = std::abs(v.real());
  const double im = std::abs(v.imag());
  if (im == 0.0) return 0.0;
  return re == 0.0 ? std::numeric_limits<double>::infinity() : im / re;
}

bool same_angles(const GridPoint& a, const GridPoint& b) { return a.theta == b.theta && a.theta_p == b.theta_p; }

}  // namespace

QuadratureRule gauss_legendre_on_0_pi(std::size_t npoints) {
  if (npoints < 2) {
    throw DomainError("gauss_legendre_on_0_pi: need at least 2 points");
  }
  const double n = static_cast<double>(npoints);
  QuadratureRule rule;
  rule.nodes.resize(npoints);
  rule.weights.resize(npoints);
  const std::size_t half = (npoints + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Newton on P_n from the Tricomi-style initial guess.
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= npoints; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x in (-1, 1) maps to theta = pi (1 + x) / 2; the Jacobian is pi / 2.
    rule.nodes[i] = 0.5 * kPi * (1.0 - x);
    rule.nodes[npoints - 1 - i] = 0.5 * kPi * (1.0 + x);
    rule.weights[i] = 0.5 * kPi * w;
    rule.weights[npoints - 1 - i] = 0.5 * kPi * w;
  }
  return rule;
}

std::vector<std::vector<double>> gram_matrix(PotentialParameter nu, std::size_t nmax, const QuadratureRule& rule) {
  const std::size_t dim = nmax + 1;
  std::vector<std::vector<double>> phi;  // phi[i][n] at node i
  phi.reserve(rule.size());
  for (double node : rule.nodes) {
    phi.push_back(spectral::eigenfunction_sequence(nmax, nu, Angle(node)));
  }
  std::vector<std::vector<double>> gram(dim, std::vector<double>(dim, 0.0));
  for (std::size_t n = 0; n < dim; ++n) {
    for (std::size_t m = n; m < dim; ++m) {
      detail::CompensatedSum<double> sum;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        sum.add(rule.weights[i] * phi[i][n] * phi[i][m]);
      }
      gram[n][m] = gram[m][n] = sum.value();
    }
  }
  return gram;
}

double check_orthonormality(PotentialParameter nu, std::size_t nmax, const QuadratureRule& rule) {
  const auto gram = gram_matrix(nu, nmax, rule);
  double worst = 0.0;
  for (std::size_t n = 0; n < gram.size(); ++n) {
    for (std::size_t m = 0; m < gram.size(); ++m) {
      worst = std::max(worst, std::abs(gram[n][m] - (n == m ? 1.0 : 0.0)));
    }
  }
  return worst;
}

OrthonormalityCertificate certify_orthonormality(PotentialParameter nu, std::size_t nmax, double tol,
                                                 std::size_t max_points) {
  OrthonormalityCertificate cert;
  cert.npoints = 2 * nmax + 30;
  auto coarse = gram_matrix(nu, nmax, gauss_legendre_on_0_pi(cert.npoints));
  for (;;) {
    auto fine = gram_matrix(nu, nmax, gauss_legendre_on_0_pi(2 * cert.npoints));
    cert.deviation = 0.0;
    cert.refinement_gap = 0.0;
    for (std::size_t n = 0; n <= nmax; ++n) {
      for (std::size_t m = 0; m <= nmax; ++m) {
        cert.deviation = std::max(cert.deviation, std::abs(coarse[n][m] - (n == m ? 1.0 : 0.0)));
        cert.refinement_gap = std::max(cert.refinement_gap, std::abs(coarse[n][m] - fine[n][m]));
      }
    }
    if (cert.refinement_gap <= tol || 4 * cert.npoints > max_points) return cert;
    cert.npoints *= 2;
    coarse = std::move(fine);
  }
}

double check_gaussian_bessel_link(std::size_t n, PotentialParameter nu, DimensionlessTime lambda) {
  const double l = lambda.value();
  const double mu = static_cast<double>(n) + nu.value();
  const double gaussian = std::exp(-0.5 * l * mu * mu);
  // e^{-1/lambda} I(1/lambda) is exactly the scaled Bessel value.
  const double bessel_side =
      std::sqrt(2.0 * kPi / l) * specfun::bessel_i_scaled(mu, 1.0 / l) * std::exp(-0.125 * l);
  return std::abs(gaussian - bessel_side) / gaussian;
}

double check_semigroup(PotentialParameter nu, DimensionlessTime lambda1, DimensionlessTime lambda2, Angle theta_a,
                       Angle theta_b, const QuadratureRule& rule, const spectral::TruncationPolicy& policy) {
  const double composed = integrate(rule, [&](double t) {
    const Angle mid(t);
    return spectral::kernel_spectral(nu, theta_a, mid, lambda1, policy).value.real() *
           spectral::kernel_spectral(nu, mid, theta_b, lambda2, policy).value.real();
  });
  const DimensionlessTime total(lambda1.value() + lambda2.value());
  const double direct = spectral::kernel_spectral(nu, theta_a, theta_b, total, policy).value.real();
  return std::abs(composed - direct) / std::abs(direct);
}

KernelEstimate evaluate(Method method, PotentialParameter nu, Angle theta, Angle theta_p, DimensionlessTime lambda,
                        const EvaluationConfig& config) {
  switch (method) {
    case Method::spectral:
      return spectral::kernel_spectral(nu, theta, theta_p, lambda, config.truncation);
    case Method::closed_form:
      return closedform::kernel_closed(nu, theta, theta_p, lambda);
    case Method::path_sum_nu1:
      if (nu.value() != 1.0) throw DomainError("pathsum-nu1 is defined for nu = 1 only");
      return pathsum::kernel_pathsum_nu1(theta, theta_p, lambda, config.path_sum);
    case Method::path_sum_nu2:
      if (nu.value() != 2.0) throw DomainError("pathsum-nu2 is defined for nu = 2 only");
      return pathsum::kernel_pathsum_nu2(theta, theta_p, lambda, config.path_sum);
    case Method::path_sum_general:
      return pathsum::kernel_pathsum_general(nu, theta, theta_p, lambda, config.path_sum);
  }
  throw DomainError("unknown kernel method");
}

void derive_report_fields(ComparisonReport& report) {
  const std::size_t rows = report.grid.size();
  report.abs_dev.assign(rows, 0.0);
  report.rel_dev.assign(rows, 0.0);
  report.max_rel_dev = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double ref = report.values_a[i].real();
    const double dev = std::abs(report.values_b[i].real() - ref);
    report.abs_dev[i] = dev;
    if (dev == 0.0) {
      report.rel_dev[i] = 0.0;
    } else {
      report.rel_dev[i] = ref == 0.0 ? std::numeric_limits<double>::infinity() : dev / std::abs(ref);
    }
    report.max_rel_dev = std::max(report.max_rel_dev, report.rel_dev[i]);
  }

  // Convergence ratios need every angle pair to run through a halving chain.
  report.convergence_ratios.reset();
  std::vector<double> ratios;
  bool halving = rows >= 2;
  for (std::size_t start = 0; start < rows && halving;) {
    std::size_t end = start + 1;
    while (end < rows && same_angles(report.grid[start], report.grid[end])) ++end;
    if (end - start < 2) {
      halving = false;
      break;
    }
    for (std::size_t i = start; i + 1 < end; ++i) {
      const double l0 = report.grid[i].lambda;
      const double l1 = report.grid[i + 1].lambda;
      if (std::abs(l1 - 0.5 * l0) > 1e-12 * l0) {
        halving = false;
        break;
      }
      ratios.push_back(report.rel_dev[i] / report.rel_dev[i + 1]);
    }
    start = end;
  }
  if (halving) report.convergence_ratios = std::move(ratios);

  report.im_over_re.reset();
  const bool b_complex = is_complex_method(report.method_b);
  if (b_complex || is_complex_method(report.method_a)) {
    const auto& values = b_complex ? report.values_b : report.values_a;
    std::vector<double> diag;
    diag.reserve(rows);
    for (const auto& v : values) diag.push_back(im_over_re_of(v));
    report.im_over_re = std::move(diag);
  }
}

ComparisonReport compare_methods(PotentialParameter nu, std::span<const AnglePair> angle_pairs,
                                 std::span<const DimensionlessTime> lambda_chain, Method method_a, Method method_b,
                                 const EvaluationConfig& config) {
  if (angle_pairs.empty() || lambda_chain.empty()) {
    throw DomainError("compare_methods: angle grid and lambda chain must be nonempty");
  }
  for (std::size_t i = 1; i < lambda_chain.size(); ++i) {
    if (!(lambda_chain[i].value() < lambda_chain[i - 1].value())) {
      throw DomainError("compare_methods: lambda chain must be strictly decreasing");
    }
  }
  ComparisonReport report;
  report.method_a = method_a;
  report.method_b = method_b;
  for (const auto& [theta, theta_p] : angle_pairs) {
    for (const auto& lambda : lambda_chain) {
      report.grid.push_back({theta.value(), theta_p.value(), lambda.value()});
      report.values_a.push_back(evaluate(method_a, nu, theta, theta_p, lambda, config).value);
      report.values_b.push_back(evaluate(method_b, nu, theta, theta_p, lambda, config).value);
    }
  }
  derive_report_fields(report);
  return report;
}

std::vector<std::vector<double>> latin_hypercube(std::size_t samples, std::size_t dims, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<std::vector<double>> points(samples, std::vector<double>(dims, 0.0));
  std::vector<std::size_t> strata(samples);
  for (std::size_t d = 0; d < dims; ++d) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    // Fisher-Yates on raw engine output keeps the design identical across standard libraries.
    for (std::size_t i = samples; i > 1; --i) {
      std::swap(strata[i - 1], strata[engine() % i]);
    }
    for (std::size_t i = 0; i < samples; ++i) {
      points[i][d] = (static_cast<double>(strata[i]) + 0.5) / static_cast<double>(samples);
    }
  }
  return points;
}

std::vector<AnglePair> interior_grid(std::size_t m) {
  std::vector<AnglePair> pairs;
  pairs.reserve(m * m);
  const double step = kPi / static_cast<double>(m + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      pairs.emplace_back(Angle(static_cast<double>(i) * step), Angle(static_cast<double>(j) * step));
    }
  }
  return pairs;
}

}  // namespace boxkernel::verify
