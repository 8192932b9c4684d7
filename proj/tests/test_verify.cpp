#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "boxkernel/errors.hpp"
#include "boxkernel/verify.hpp"

using namespace boxkernel;
using namespace boxkernel::verify;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<DimensionlessTime> chain(std::initializer_list<double> ls) {
  std::vector<DimensionlessTime> out;
  for (double l : ls) out.emplace_back(l);
  return out;
}

}  // namespace

TEST_CASE("Gauss-Legendre on (0, pi) integrates the standard cases") {
  CHECK(std::abs(integrate(gauss_legendre_on_0_pi(20), [](double t) { return std::sin(t); }) - 2.0) < 1e-13);
  CHECK(std::abs(integrate(gauss_legendre_on_0_pi(40), [](double t) { return std::pow(std::sin(3 * t), 2); }) -
                 kPi / 2) < 1e-13);
  for (std::size_t n : {2u, 3u, 17u, 110u, 440u}) {
    const auto rule = gauss_legendre_on_0_pi(n);
    REQUIRE(rule.size() == n);
    double total = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(std::abs(total - kPi) < 1e-12);
    CHECK(rule.nodes.front() > 0.0);
    CHECK(rule.nodes.back() < kPi);
    CHECK(std::is_sorted(rule.nodes.begin(), rule.nodes.end()));
  }
}

TEST_CASE("n-point rule is exact through degree 2n - 1") {
  const std::size_t n = 6;
  const auto rule = gauss_legendre_on_0_pi(n);
  for (int k = 0; k <= 2 * static_cast<int>(n) - 1; ++k) {
    const double exact = std::pow(kPi, k + 1) / (k + 1);
    CHECK(std::abs(integrate(rule, [k](double t) { return std::pow(t, k); }) - exact) < 1e-12 * exact);
  }
  const double beyond = std::pow(kPi, 2 * n + 1) / (2 * n + 1);
  CHECK(std::abs(integrate(rule, [](double t) { return std::pow(t, 12); }) - beyond) > 1e-8 * beyond);
  CHECK_THROWS_AS(gauss_legendre_on_0_pi(1), DomainError);
}

TEST_CASE("eigenfunctions are orthonormal to 1e-10 with the 2 nmax + 30 rule") {
  for (double nu : {0.5, 1.0, 2.7}) {
    CAPTURE(nu);
    CHECK(check_orthonormality(PotentialParameter(nu), 40, gauss_legendre_on_0_pi(110)) <= 1e-10);
  }
}

TEST_CASE("refinement certificate adds nodes only when the rules disagree") {
  const auto smooth = certify_orthonormality(PotentialParameter(2.0), 40, 1e-10);
  CHECK(smooth.npoints == 110);
  CHECK(smooth.refinement_gap <= 1e-10);
  CHECK(smooth.deviation <= 1e-10);
  // sin^{2.6} at the walls slows Gauss-Legendre down.
  const auto rough = certify_orthonormality(PotentialParameter(1.3), 40, 1e-10);
  CHECK(rough.npoints > 110);
  CHECK(rough.refinement_gap <= 1e-10);
  CHECK(rough.deviation <= 1e-10);
  const auto gram = gram_matrix(PotentialParameter(1.3), 5, gauss_legendre_on_0_pi(200));
  CHECK(gram[2][4] == gram[4][2]);
}

TEST_CASE("Gaussian-Bessel link behaves like the next asymptotic correction") {
  CHECK(check_gaussian_bessel_link(0, PotentialParameter(0.5), DimensionlessTime(0.01)) < 1e-3);
  for (std::size_t n = 0; n <= 3; ++n) {
    const PotentialParameter nu(1.0);
    const double a = check_gaussian_bessel_link(n, nu, DimensionlessTime(0.1));
    const double b = check_gaussian_bessel_link(n, nu, DimensionlessTime(0.05));
    const double c = check_gaussian_bessel_link(n, nu, DimensionlessTime(0.025));
    CHECK(b < a);
    CHECK(c < b);
  }
  double previous = 0.0;
  for (std::size_t n = 0; n <= 10; ++n) {
    const double d = check_gaussian_bessel_link(n, PotentialParameter(1.0), DimensionlessTime(0.01));
    CHECK(d > previous);
    previous = d;
  }
}

TEST_CASE("semigroup composition reproduces the kernel at the summed time") {
  const auto rule = gauss_legendre_on_0_pi(200);
  CHECK(check_semigroup(PotentialParameter(1.0), DimensionlessTime(0.5), DimensionlessTime(0.5), Angle(1.0),
                        Angle(2.0), rule) <= 1e-8);
  CHECK(check_semigroup(PotentialParameter(2.5), DimensionlessTime(0.3), DimensionlessTime(0.7), Angle(0.6),
                        Angle(1.9), rule) <= 1e-8);
  CHECK(check_semigroup(PotentialParameter(1.0), DimensionlessTime(0.01), DimensionlessTime(0.5), Angle(1.0),
                        Angle(2.0), rule) <= 1e-6);
}

TEST_CASE("evaluate guards the special-case path sums") {
  CHECK_THROWS_AS(evaluate(Method::path_sum_nu1, PotentialParameter(1.5), Angle(1.0), Angle(1.0), DimensionlessTime(0.1)),
                  DomainError);
  CHECK_THROWS_AS(evaluate(Method::path_sum_nu2, PotentialParameter(1.0), Angle(1.0), Angle(1.0), DimensionlessTime(0.1)),
                  DomainError);
  CHECK(evaluate(Method::closed_form, PotentialParameter(1.0), Angle(1.0), Angle(1.0), DimensionlessTime(0.1)).method ==
        Method::closed_form);
}

TEST_CASE("nu = 1 comparison stays at rounding level on the interior grid") {
  const auto grid = interior_grid(9);
  const auto ls = chain({0.4, 0.2, 0.1});
  const auto r = compare_methods(PotentialParameter(1.0), grid, ls, Method::spectral, Method::path_sum_nu1);
  CHECK(r.grid.size() == 243);
  CHECK(r.max_rel_dev <= 1e-10);
  CHECK(r.max_rel_dev == *std::max_element(r.rel_dev.begin(), r.rel_dev.end()));
  CHECK_FALSE(r.im_over_re.has_value());
  REQUIRE(r.convergence_ratios.has_value());
  CHECK(r.convergence_ratios->size() == 81 * 2);
}

TEST_CASE("rows run through the chain for each angle pair in turn") {
  const std::vector<AnglePair> pairs{{Angle(1.0), Angle(1.2)}, {Angle(2.0), Angle(0.7)}};
  const auto r = compare_methods(PotentialParameter(2.0), pairs, chain({0.4, 0.2}), Method::spectral,
                                 Method::path_sum_nu2);
  REQUIRE(r.grid.size() == 4);
  CHECK(r.grid[1].theta == 1.0);
  CHECK(r.grid[1].lambda == 0.2);
  CHECK(r.grid[2].theta == 2.0);
  CHECK(r.grid[2].lambda == 0.4);
}

TEST_CASE("convergence ratios need a halving chain") {
  const std::vector<AnglePair> pairs{{Angle(1.0), Angle(1.0)}};
  const auto halving =
      compare_methods(PotentialParameter(2.0), pairs, chain({0.4, 0.2, 0.1}), Method::spectral, Method::closed_form);
  REQUIRE(halving.convergence_ratios.has_value());
  CHECK(halving.convergence_ratios->size() == 2);
  CHECK((*halving.convergence_ratios)[0] == halving.rel_dev[0] / halving.rel_dev[1]);
  const auto other =
      compare_methods(PotentialParameter(2.0), pairs, chain({0.4, 0.3}), Method::spectral, Method::closed_form);
  CHECK_FALSE(other.convergence_ratios.has_value());
  const auto single = compare_methods(PotentialParameter(2.0), pairs, chain({0.4}), Method::spectral, Method::closed_form);
  CHECK_FALSE(single.convergence_ratios.has_value());
}

TEST_CASE("general path sum reports a shrinking imaginary residue") {
  const std::vector<AnglePair> pairs{{Angle(1.3), Angle(1.5)}};
  const auto r = compare_methods(PotentialParameter(1.3), pairs, chain({0.4, 0.2, 0.1, 0.05}), Method::spectral,
                                 Method::path_sum_general);
  REQUIRE(r.im_over_re.has_value());
  for (std::size_t i = 0; i + 1 < r.im_over_re->size(); ++i) {
    CHECK((*r.im_over_re)[i + 1] < (*r.im_over_re)[i]);
  }
}

TEST_CASE("comparison rejects empty inputs and non-decreasing chains") {
  const std::vector<AnglePair> pairs{{Angle(1.0), Angle(1.0)}};
  const std::vector<AnglePair> none;
  CHECK_THROWS_AS(compare_methods(PotentialParameter(1.0), none, chain({0.4}), Method::spectral, Method::closed_form),
                  DomainError);
  CHECK_THROWS_AS(compare_methods(PotentialParameter(1.0), pairs, chain({0.2, 0.4}), Method::spectral,
                                  Method::closed_form),
                  DomainError);
  CHECK_THROWS_AS(compare_methods(PotentialParameter(1.0), pairs, chain({0.2, 0.2}), Method::spectral,
                                  Method::closed_form),
                  DomainError);
}

TEST_CASE("reports are reproducible bit for bit") {
  const auto grid = interior_grid(4);
  const auto ls = chain({0.4, 0.2});
  const auto a = compare_methods(PotentialParameter(1.7), grid, ls, Method::spectral, Method::path_sum_general);
  const auto b = compare_methods(PotentialParameter(1.7), grid, ls, Method::spectral, Method::path_sum_general);
  CHECK(a.values_a == b.values_a);
  CHECK(a.values_b == b.values_b);
  CHECK(a.rel_dev == b.rel_dev);
}

TEST_CASE("Latin hypercube puts one sample in every stratum") {
  const auto design = latin_hypercube(50, 4, 7);
  REQUIRE(design.size() == 50);
  for (std::size_t d = 0; d < 4; ++d) {
    std::vector<int> hits(50, 0);
    for (const auto& p : design) {
      CHECK(p[d] > 0.0);
      CHECK(p[d] < 1.0);
      hits[static_cast<std::size_t>(p[d] * 50)]++;
    }
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
  CHECK(latin_hypercube(50, 4, 7) == design);
  CHECK(latin_hypercube(50, 4, 8) != design);
}

TEST_CASE("interior grid spacing") {
  const auto g = interior_grid(9);
  REQUIRE(g.size() == 81);
  CHECK(g.front().first.value() == doctest::Approx(kPi / 10));
  CHECK(g.back().second.value() == doctest::Approx(0.9 * kPi));
}
