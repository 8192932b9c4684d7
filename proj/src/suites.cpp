#include "boxkernel/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "boxkernel/closedform.hpp"
#include "boxkernel/errors.hpp"
#include "boxkernel/pathsum.hpp"

namespace boxkernel::suites {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative deviations at this level are rounding, not a convergence signal.
constexpr double kRoundingFloor = 1e-13;

CheckResult at_most(std::string suite, std::string name, double measured, double tol, std::string tol_text) {
  return {std::move(suite), std::move(name), measured, "<= " + tol_text, measured <= tol};
}

CheckResult below_one(std::string suite, std::string name, double measured) {
  return {std::move(suite), std::move(name), measured, "< 1", measured < 1.0};
}

CheckResult exactly_zero(std::string suite, std::string name, double measured) {
  return {std::move(suite), std::move(name), measured, "== 0", measured == 0.0};
}

std::vector<double> real_deviations(PotentialParameter nu, const verify::AnglePair& p,
                                    const std::vector<DimensionlessTime>& chain, Method ref, Method other,
                                    const verify::EvaluationConfig& config) {
  const std::array<verify::AnglePair, 1> one{p};
  return verify::compare_methods(nu, one, chain, ref, other, config).rel_dev;
}

std::string point_label(const verify::AnglePair& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.2f, %.2f)", p.first.value(), p.second.value());
  return buf;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> orthonormality(PotentialParameter nu, const verify::EvaluationConfig&) {
  const auto cert = verify::certify_orthonormality(nu, 40, 1e-10);
  const std::string nodes = std::to_string(cert.npoints);
  return {at_most("orthonormality", "gram deviation, n,m <= 40, " + nodes + " nodes", cert.deviation, 1e-10, "1e-10"),
          at_most("orthonormality", "refinement " + nodes + " -> " + std::to_string(2 * cert.npoints) + " nodes",
                  cert.refinement_gap, 1e-10, "1e-10")};
}

std::vector<CheckResult> addition(PotentialParameter nu, const verify::EvaluationConfig&) {
  // theta, offset of theta' from theta, and log(1/lambda)
  const auto design = verify::latin_hypercube(20, 3, 0x5eed);
  double worst = 0.0;
  for (const auto& u : design) {
    const double t = 0.05 + (kPi - 0.1) * u[0];
    const double z = std::exp(std::log(0.5) + (std::log(100.0) - std::log(0.5)) * u[2]);
    const double l = 1.0 / z;
    double tp = t + (2.0 * u[1] - 1.0) * 3.0 * std::sqrt(l);
    tp = std::clamp(tp, 0.05, kPi - 0.05);
    const Angle a(t), b(tp);
    const DimensionlessTime lambda(l);
    const std::size_t n = closedform::addition_formula_terms(nu, a, b, lambda);
    const double lhs = closedform::addition_formula_lhs(nu, a, b, lambda, n);
    const double rhs = closedform::addition_formula_rhs(nu, a, b, lambda);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return {at_most("addition", "lhs vs rhs, 20 sampled points", worst, 1e-8, "1e-8")};
}

std::vector<CheckResult> link(PotentialParameter nu, const verify::EvaluationConfig&) {
  double at_small = 0.0;
  double step = 0.0;
  for (std::size_t n = 0; n <= 5; ++n) {
    at_small = std::max(at_small, verify::check_gaussian_bessel_link(n, nu, DimensionlessTime(0.01)));
    std::vector<double> d;
    for (double l : {0.1, 0.05, 0.025}) d.push_back(verify::check_gaussian_bessel_link(n, nu, DimensionlessTime(l)));
    step = std::max(step, worst_step_ratio(d, kRoundingFloor));
  }
  return {at_most("link", "n <= 5 at lambda = 0.01", at_small, 1e-3, "1e-3"),
          below_one("link", "decrease along 0.1, 0.05, 0.025", step)};
}

std::vector<CheckResult> nu1(PotentialParameter, const verify::EvaluationConfig& config) {
  const PotentialParameter one(1.0);
  const auto grid = verify::interior_grid(9);
  const std::vector<DimensionlessTime> chain{DimensionlessTime(2.0), DimensionlessTime(0.5), DimensionlessTime(0.1)};
  const auto report = verify::compare_methods(one, grid, chain, Method::spectral, Method::path_sum_nu1, config);
  return {at_most("nu1", "spectral vs image sum, 9x9 grid", report.max_rel_dev, 1e-10, "1e-10")};
}

std::vector<CheckResult> phases(PotentialParameter nu, const verify::EvaluationConfig&) {
  using pathsum::Parity;
  using pathsum::Prescription;
  double mismatches = 0.0;
  for (int v = 1; v <= 5; ++v) {
    const PotentialParameter p(v);
    const double odd_sign = v % 2 == 1 ? -1.0 : 1.0;
    for (auto pres : {Prescription::winding, Prescription::principal}) {
      for (int k = -8; k <= 8; ++k) {
        if (pathsum::reflection_phase(k, Parity::even, p, pres) != std::complex<double>(1.0, 0.0)) mismatches += 1.0;
        if (pathsum::reflection_phase(k, Parity::odd, p, pres) != std::complex<double>(odd_sign, 0.0)) {
          mismatches += 1.0;
        }
      }
    }
  }

  // A / B must be e^{2 m nu pi i} for some integer m.
  double worst = 0.0;
  for (int k = -8; k <= 8; ++k) {
    for (auto parity : {Parity::even, Parity::odd}) {
      const auto ratio = pathsum::reflection_phase(k, parity, nu, Prescription::winding) /
                         pathsum::reflection_phase(k, parity, nu, Prescription::principal);
      double best = 2.0;
      for (int m = -20; m <= 20; ++m) {
        best = std::min(best, std::abs(ratio - std::polar(1.0, 2.0 * m * nu.value() * kPi)));
      }
      worst = std::max(worst, best);
    }
  }
  return {exactly_zero("phases", "integer nu 1..5 sign law, both prescriptions", mismatches),
          at_most("phases", "prescription ratio is an even winding", worst, 1e-12, "1e-12")};
}

std::vector<CheckResult> nu2(PotentialParameter, const verify::EvaluationConfig& config) {
  const PotentialParameter two(2.0);
  const auto chain = default_lambda_chain();
  std::vector<CheckResult> out;
  for (const auto& p : probe_points()) {
    const auto d = real_deviations(two, p, chain, Method::spectral, Method::path_sum_nu2, config);
    out.push_back(below_one("nu2", "decrease at " + point_label(p), worst_step_ratio(d, kRoundingFloor)));
  }
  double gap = 0.0;
  for (const auto& [a, b] : verify::interior_grid(9)) {
    for (const auto& l : chain) {
      const auto x = pathsum::kernel_pathsum_nu2(a, b, l, config.path_sum).value;
      const auto y = pathsum::kernel_pathsum_general(two, a, b, l, config.path_sum).value;
      gap = std::max(gap, std::abs(x - y));
    }
  }
  out.push_back(exactly_zero("nu2", "equals general sum at nu = 2", gap));
  return out;
}

std::vector<CheckResult> general(PotentialParameter nu, const verify::EvaluationConfig& config) {
  const auto chain = default_lambda_chain();
  const bool integer_nu = nu.value() == std::floor(nu.value());
  std::vector<CheckResult> out;
  for (const auto& p : probe_points()) {
    const std::array<verify::AnglePair, 1> one{p};
    const auto report = verify::compare_methods(nu, one, chain, Method::spectral, Method::path_sum_general, config);
    out.push_back(below_one("general", "Re decrease at " + point_label(p), worst_step_ratio(report.rel_dev, kRoundingFloor)));
    if (integer_nu) {
      double im = 0.0;
      for (const auto& v : report.values_b) im = std::max(im, std::abs(v.imag()));
      out.push_back(exactly_zero("general", "Im vanishes at " + point_label(p), im));
    } else {
      out.push_back(below_one("general", "|Im|/|Re| decrease at " + point_label(p), worst_step_ratio(*report.im_over_re)));
    }
  }

  pathsum::PathSumConfig short_sum = config.path_sum;
  pathsum::PathSumConfig long_sum = config.path_sum;
  short_sum.k_max = 4;
  long_sum.k_max = 8;
  double change = 0.0;
  for (const auto& [a, b] : verify::interior_grid(9)) {
    for (double l : {2.0, 0.5, 0.1}) {
      const DimensionlessTime lambda(l);
      const auto x = pathsum::kernel_pathsum_general(nu, a, b, lambda, short_sum).value;
      const auto y = pathsum::kernel_pathsum_general(nu, a, b, lambda, long_sum).value;
      change = std::max(change, std::abs(x - y) / std::abs(y));
    }
  }
  out.push_back(at_most("general", "k_max 4 -> 8 change", change, 1e-14, "1e-14"));
  return out;
}

std::vector<CheckResult> semigroup(PotentialParameter nu, const verify::EvaluationConfig& config) {
  const auto rule = verify::gauss_legendre_on_0_pi(200);
  std::vector<CheckResult> out;
  for (auto [l1, l2] : {std::pair{0.5, 0.5}, std::pair{0.3, 0.7}}) {
    const double dev = verify::check_semigroup(nu, DimensionlessTime(l1), DimensionlessTime(l2), Angle(1.0),
                                               Angle(2.0), rule, config.truncation);
    char name[64];
    std::snprintf(name, sizeof name, "composition %.1f + %.1f", l1, l2);
    out.push_back(at_most("semigroup", name, dev, 1e-8, "1e-8"));
  }
  return out;
}

std::vector<CheckResult> closed(PotentialParameter nu, const verify::EvaluationConfig& config) {
  const auto chain = default_lambda_chain();
  std::vector<CheckResult> out;
  for (const auto& p : probe_points()) {
    const auto d = real_deviations(nu, p, chain, Method::spectral, Method::closed_form, config);
    out.push_back(below_one("closed", "decrease at " + point_label(p), worst_step_ratio(d, kRoundingFloor)));
    // Report the ratio furthest outside the band.
    double pick = d[0] / d[1];
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      const double r = d[i] / d[i + 1];
      const auto miss = [](double x) { return x < 2.0 ? 2.0 - x : (x > 8.0 ? x - 8.0 : 0.0); };
      if (miss(r) > miss(pick)) pick = r;
    }
    out.push_back({"closed", "halving ratio at " + point_label(p), pick, "in [2, 8]", pick >= 2.0 && pick <= 8.0});
  }
  return out;
}

using SuiteFn = std::function<std::vector<CheckResult>(PotentialParameter, const verify::EvaluationConfig&)>;

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> table{
      {"orthonormality", orthonormality}, {"addition", addition}, {"link", link},
      {"nu1", nu1},                       {"phases", phases},     {"nu2", nu2},
      {"general", general},               {"semigroup", semigroup}, {"closed", closed},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"orthonormality", "addition", "link",      "nu1",   "phases",
                                              "nu2",            "general",  "semigroup", "closed"};
  return names;
}

std::vector<CheckResult> run_suite(std::string_view name, PotentialParameter nu, const verify::EvaluationConfig& config) {
  if (name == "all") {
    std::vector<CheckResult> all;
    for (const auto& s : suite_names()) {
      auto part = registry().find(s)->second(nu, config);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  const auto it = registry().find(name);
  if (it == registry().end()) {
    throw DomainError("unknown suite '" + std::string(name) + "'");
  }
  return it->second(nu, config);
}

std::vector<verify::AnglePair> probe_points() {
  return {{Angle(1.0), Angle(1.0)}, {Angle(1.3), Angle(1.5)}, {Angle(0.8), Angle(1.1)}};
}

std::vector<DimensionlessTime> default_lambda_chain() {
  return {DimensionlessTime(0.4), DimensionlessTime(0.2), DimensionlessTime(0.1), DimensionlessTime(0.05)};
}

double worst_step_ratio(const std::vector<double>& d, double floor) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] <= floor && d[i + 1] <= floor) continue;
    worst = std::max(worst, d[i] == 0.0 ? std::numeric_limits<double>::infinity() : d[i + 1] / d[i]);
  }
  return worst;
}

}  // namespace boxkernel::suites
