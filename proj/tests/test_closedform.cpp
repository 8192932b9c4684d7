#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "boxkernel/closedform.hpp"
#include "boxkernel/spectral.hpp"
#include "oracle.hpp"

using namespace boxkernel;
using namespace boxkernel::closedform;
using oracle::rel;

namespace {

constexpr double kPi = std::numbers::pi;

double deviation(double nu, double t, double tp, double l) {
  const PotentialParameter p(nu);
  const double s = spectral::kernel_spectral(p, Angle(t), Angle(tp), DimensionlessTime(l)).value.real();
  const double c = kernel_closed(p, Angle(t), Angle(tp), DimensionlessTime(l)).value.real();
  return std::abs(c - s) / std::abs(s);
}

}  // namespace

TEST_CASE("nu = 1 closed form is the two-image Gaussian pair with chord distances") {
  for (double l : {0.05, 0.4, 2.0}) {
    for (double t : {0.3, 1.4}) {
      for (double tp : {0.9, 2.6}) {
        const double exact = std::exp(-l / 8.0) / std::sqrt(2.0 * kPi * l) *
                             (std::exp(-(1.0 - std::cos(t - tp)) / l) - std::exp(-(1.0 - std::cos(t + tp)) / l));
        const auto est = kernel_closed(PotentialParameter(1.0), Angle(t), Angle(tp), DimensionlessTime(l));
        CHECK(rel(est.value.real(), exact) < 1e-13);
        CHECK(est.value.imag() == 0.0);
        CHECK(est.method == Method::closed_form);
      }
    }
  }
}

TEST_CASE("closed form is symmetric and positive") {
  for (double nu : {0.5, 1.7, 3.0}) {
    const auto ab = kernel_closed(PotentialParameter(nu), Angle(0.7), Angle(2.2), DimensionlessTime(0.3));
    const auto ba = kernel_closed(PotentialParameter(nu), Angle(2.2), Angle(0.7), DimensionlessTime(0.3));
    CHECK(ab.value == ba.value);
    CHECK(ab.value.real() > 0.0);
  }
}

TEST_CASE("addition formula holds as an identity") {
  struct Point {
    double nu, t, tp, l;
  };
  for (const auto& p : {Point{0.5, 1.0, 1.2, 0.5}, Point{1.0, 0.4, 0.5, 0.05}, Point{2.5, 1.1, 1.3, 0.01},
                        Point{3.7, 2.0, 1.6, 0.2}, Point{1.25, 2.9, 3.0, 1.5}}) {
    const PotentialParameter nu(p.nu);
    const Angle a(p.t), b(p.tp);
    const DimensionlessTime l(p.l);
    const std::size_t n = addition_formula_terms(nu, a, b, l);
    CAPTURE(p.nu);
    CHECK(rel(addition_formula_lhs(nu, a, b, l, n), addition_formula_rhs(nu, a, b, l)) < 1e-11);
  }
}

TEST_CASE("addition formula needs more terms as 1/lambda grows") {
  const PotentialParameter nu(1.5);
  const std::size_t few = addition_formula_terms(nu, Angle(1.0), Angle(1.1), DimensionlessTime(1.0));
  const std::size_t many = addition_formula_terms(nu, Angle(1.0), Angle(1.1), DimensionlessTime(0.01));
  CHECK(few < many);
  CHECK(many > 100);
}

TEST_CASE("deviation from the spectral kernel decreases along the default chain") {
  for (double nu : {0.75, 1.0, 1.5, 2.0, 3.0}) {
    for (auto [t, tp] : {std::pair{1.3, 1.5}, std::pair{kPi / 2, kPi / 2}}) {
      double previous = INFINITY;
      for (double l : {0.4, 0.2, 0.1, 0.05}) {
        const double d = deviation(nu, t, tp, l);
        CAPTURE(nu);
        CAPTURE(l);
        CHECK(d < previous);
        previous = d;
      }
    }
  }
}

TEST_CASE("convergence on the diagonal is first order with slope 1/8") {
  for (double nu : {0.75, 1.0, 1.5, 2.0, 3.0}) {
    std::vector<double> d;
    for (double l : {0.1, 0.05, 0.025, 0.0125}) d.push_back(deviation(nu, kPi / 2, kPi / 2, l));
    CAPTURE(nu);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      const double ratio = d[i] / d[i + 1];
      CHECK(ratio > 1.9);
      CHECK(ratio < 2.6);
    }
    CHECK(d.back() / 0.0125 == doctest::Approx(0.125).epsilon(0.05));
  }
}
