#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "boxkernel/errors.hpp"
#include "boxkernel/pathsum.hpp"
#include "oracle.hpp"

using namespace boxkernel;
using namespace boxkernel::pathsum;
using oracle::rel;

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

}  // namespace

TEST_CASE("integer nu phases are exactly +1 on even terms and (-1)^nu on odd terms") {
  for (int v = 1; v <= 5; ++v) {
    const PotentialParameter nu(v);
    const cplx odd(v % 2 == 1 ? -1.0 : 1.0, 0.0);
    for (auto pres : {Prescription::winding, Prescription::principal}) {
      for (int k = -10; k <= 10; ++k) {
        CHECK(reflection_phase(k, Parity::even, nu, pres) == cplx(1.0, 0.0));
        CHECK(reflection_phase(k, Parity::odd, nu, pres) == odd);
      }
    }
  }
}

TEST_CASE("half-integer nu phases are exact quarter turns") {
  const PotentialParameter nu(0.5);
  CHECK(reflection_phase(0, Parity::odd, nu, Prescription::winding) == cplx(0.0, -1.0));
  CHECK(reflection_phase(0, Parity::odd, nu, Prescription::principal) == cplx(0.0, 1.0));
  CHECK(reflection_phase(1, Parity::even, nu, Prescription::winding) == cplx(-1.0, 0.0));
  CHECK(reflection_phase(1, Parity::odd, nu, Prescription::winding) == cplx(0.0, 1.0));
}

TEST_CASE("general phases follow the winding numbers") {
  const PotentialParameter nu(1.3);
  for (int k = -4; k <= 4; ++k) {
    const auto even = reflection_phase(k, Parity::even, nu, Prescription::winding);
    const auto odd = reflection_phase(k, Parity::odd, nu, Prescription::winding);
    CHECK(std::abs(even - std::polar(1.0, 2.0 * k * 1.3 * kPi)) < 1e-12);
    CHECK(std::abs(odd - std::polar(1.0, (2.0 * k - 1.0) * 1.3 * kPi)) < 1e-12);
    CHECK(std::abs(std::abs(even) - 1.0) < 1e-15);
    CHECK(reflection_phase(k, Parity::even, nu, Prescription::principal) == cplx(1.0, 0.0));
  }
}

TEST_CASE("the two prescriptions differ by even winding phases only") {
  for (double v : {0.5, 0.75, 1.3, 2.5, 3.14159}) {
    const PotentialParameter nu(v);
    for (int k = -8; k <= 8; ++k) {
      for (auto parity : {Parity::even, Parity::odd}) {
        const cplx ratio = reflection_phase(k, parity, nu, Prescription::winding) /
                           reflection_phase(k, parity, nu, Prescription::principal);
        // The winding prescription has m = 2k or 2k - 1, the principal one 0 or 1: the difference is 2k - 2 or 2k.
        const int m = parity == Parity::even ? k : k - 1;
        CHECK(std::abs(ratio - std::polar(1.0, 2.0 * m * v * kPi)) < 1e-12);
      }
    }
  }
}

TEST_CASE("decompose lists k ascending with the even term first") {
  const auto terms = decompose(PotentialParameter(1.7), Angle(1.0), Angle(1.4), DimensionlessTime(0.3), {3});
  REQUIRE(terms.size() == 14);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    CHECK(terms[i].k == static_cast<int>(i / 2) - 3);
    CHECK(terms[i].parity == (i % 2 == 0 ? Parity::even : Parity::odd));
  }
}

TEST_CASE("k = 0 even term is the direct Gaussian with unit phase") {
  const double t = 1.0, tp = 1.4, l = 0.3, nu = 1.7;
  const auto terms = decompose(PotentialParameter(nu), Angle(t), Angle(tp), DimensionlessTime(l));
  for (const auto& term : terms) {
    if (term.k == 0 && term.parity == Parity::even) {
      CHECK(term.phase == cplx(1.0, 0.0));
      CHECK(term.gauss_exponent == doctest::Approx(-(t - tp) * (t - tp) / (2.0 * l)));
      const double shift = l * nu * (nu - 1.0) / (2.0 * std::sin(t) * std::sin(tp));
      CHECK(term.potential_correction == doctest::Approx(-shift));
    }
    if (term.k == 0 && term.parity == Parity::odd) {
      CHECK(term.gauss_exponent == doctest::Approx(-(t + tp) * (t + tp) / (2.0 * l)));
      CHECK(term.potential_correction > 0.0);
    }
  }
}

TEST_CASE("k = 0 even term dominates near the diagonal at small lambda") {
  const auto terms = decompose(PotentialParameter(2.3), Angle(1.5), Angle(1.55), DimensionlessTime(0.05));
  const ReflectionTerm* best = &terms.front();
  for (const auto& term : terms) {
    if (term.gauss_exponent + term.potential_correction > best->gauss_exponent + best->potential_correction) {
      best = &term;
    }
  }
  CHECK(best->k == 0);
  CHECK(best->parity == Parity::even);
}

TEST_CASE("resum of decompose is the general kernel bit for bit") {
  for (double v : {0.6, 1.3, 2.0, 4.4}) {
    const PotentialParameter nu(v);
    const DimensionlessTime l(0.25);
    const auto direct = kernel_pathsum_general(nu, Angle(0.9), Angle(2.0), l);
    CHECK(resum(decompose(nu, Angle(0.9), Angle(2.0), l), l) == direct.value);
  }
}

TEST_CASE("special cases coincide exactly with the general sum") {
  for (double t : {0.2, 1.0, 2.9}) {
    for (double tp : {0.5, 1.6}) {
      for (double l : {0.05, 0.4, 2.0}) {
        const DimensionlessTime lambda(l);
        CHECK(kernel_pathsum_nu1(Angle(t), Angle(tp), lambda).value ==
              kernel_pathsum_general(PotentialParameter(1.0), Angle(t), Angle(tp), lambda).value);
        CHECK(kernel_pathsum_nu2(Angle(t), Angle(tp), lambda).value ==
              kernel_pathsum_general(PotentialParameter(2.0), Angle(t), Angle(tp), lambda).value);
      }
    }
  }
}

TEST_CASE("nu = 1 sum is the Dirichlet image kernel") {
  for (double l : {0.05, 0.5, 2.0}) {
    for (double t : {0.3, 1.2, 2.2}) {
      const auto est = kernel_pathsum_nu1(Angle(t), Angle(2.5), DimensionlessTime(l));
      CHECK(rel(est.value.real(), oracle::dirichlet_box(t, 2.5, l)) < 1e-13);
      CHECK(est.value.imag() == 0.0);
      CHECK(est.method == Method::path_sum_nu1);
    }
  }
}

TEST_CASE("integer nu gives a real sum and non-integer nu an imaginary residue") {
  const DimensionlessTime l(0.2);
  CHECK(kernel_pathsum_general(PotentialParameter(3.0), Angle(1.0), Angle(1.2), l).value.imag() == 0.0);
  const auto v = kernel_pathsum_general(PotentialParameter(1.3), Angle(1.0), Angle(1.2), l).value;
  CHECK(v.imag() != 0.0);
  CHECK(std::abs(v.imag()) < 1e-3 * std::abs(v.real()));
}

TEST_CASE("k_max beyond 4 changes nothing at lambda <= 2") {
  for (double v : {0.75, 1.3, 2.5}) {
    for (double l : {0.1, 0.5, 2.0}) {
      for (double t : {0.3, 1.5, 2.8}) {
        const auto a = kernel_pathsum_general(PotentialParameter(v), Angle(t), Angle(1.1), DimensionlessTime(l), {4});
        const auto b = kernel_pathsum_general(PotentialParameter(v), Angle(t), Angle(1.1), DimensionlessTime(l), {8});
        CHECK(std::abs(a.value - b.value) <= 1e-14 * std::abs(b.value));
      }
    }
  }
}

TEST_CASE("points near a wall are flagged") {
  CHECK(near_boundary(Angle(0.04), Angle(1.0)));
  CHECK(near_boundary(Angle(1.0), Angle(kPi - 0.01)));
  CHECK_FALSE(near_boundary(Angle(0.06), Angle(3.0)));
  CHECK(kernel_pathsum_general(PotentialParameter(1.5), Angle(0.01), Angle(1.0), DimensionlessTime(0.1)).near_boundary);
  CHECK_FALSE(kernel_pathsum_nu2(Angle(1.0), Angle(1.0), DimensionlessTime(0.1)).near_boundary);
}

TEST_CASE("k_max below 1 is rejected") {
  CHECK_THROWS_AS(kernel_pathsum_nu1(Angle(1.0), Angle(1.0), DimensionlessTime(0.1), {0}), DomainError);
  CHECK_THROWS_AS(decompose(PotentialParameter(1.5), Angle(1.0), Angle(1.0), DimensionlessTime(0.1), {-2}),
                  DomainError);
}
