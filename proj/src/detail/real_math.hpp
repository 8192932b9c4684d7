#pragma once

// Uniform spelling of the elementary functions for double and __float128 so
// the spectral terms can be written once as templates.

#include <cmath>

extern "C" {
#include <quadmath.h>
}

namespace boxkernel::detail {

__extension__ typedef __float128 quad;

namespace rm {

inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double lgamma(double x) { return std::lgamma(x); }

inline quad exp(quad x) { return ::expq(x); }
inline quad log(quad x) { return ::logq(x); }
inline quad sin(quad x) { return ::sinq(x); }
inline quad cos(quad x) { return ::cosq(x); }
inline quad lgamma(quad x) { return ::lgammaq(x); }

template <class Real>
Real pi();
template <>
inline double pi<double>() { return 3.141592653589793; }
template <>
inline quad pi<quad>() { return ::acosq(quad(-1)); }

}  // namespace rm

// Three-term upward recurrence for C_n^nu(x); calls visit(n, value) for n = 0..nmax.
template <class Real, class Visit>
void gegenbauer_recurrence(unsigned long nmax, Real nu, Real x, Visit&& visit) {
  Real prev = Real(1);
  visit(0UL, prev);
  if (nmax == 0) return;
  Real cur = Real(2) * nu * x;
  visit(1UL, cur);
  for (unsigned long n = 1; n < nmax; ++n) {
    const Real rn = Real(static_cast<double>(n));
    const Real next = (Real(2) * (rn + nu) * x * cur - (rn + Real(2) * nu - Real(1)) * prev) / (rn + Real(1));
    prev = cur;
    cur = next;
    visit(n + 1, cur);
  }
}

}  // namespace boxkernel::detail
