#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace boxkernel {

/// Coupling nu of the nu(nu-1)/sin^2(theta) potential. nu >= 1/2.
class PotentialParameter {
 public:
  explicit PotentialParameter(double nu);
  double value() const noexcept { return nu_; }
  /// nu(nu-1), the strength of the 1/sin^2 term.
  double coupling() const noexcept { return nu_ * (nu_ - 1.0); }

 private:
  double nu_;
};

/// lambda = 2 eps R / hbar; the only time variable that enters. lambda > 0.
class DimensionlessTime {
 public:
  explicit DimensionlessTime(double lambda);
  double value() const noexcept { return lambda_; }

 private:
  double lambda_;
};

/// Interior box coordinate theta = pi x / L, strictly inside (0, pi).
class Angle {
 public:
  explicit Angle(double theta);
  double value() const noexcept { return theta_; }

 private:
  double theta_;
};

enum class Method { spectral, closed_form, path_sum_nu1, path_sum_nu2, path_sum_general };

/// CLI/CSV spelling: "spectral", "closed-form", "pathsum-nu1", "pathsum-nu2", "pathsum-general".
std::string_view to_string(Method m) noexcept;
/// Inverse of to_string; returns nullopt for unknown tags.
std::optional<Method> parse_method(std::string_view tag) noexcept;

/// True for the methods whose value may carry an imaginary part.
constexpr bool is_complex_method(Method m) noexcept { return m == Method::path_sum_general; }

struct KernelEstimate {
  std::complex<double> value;
  Method method = Method::spectral;
  std::size_t terms_used = 0;
  /// Proven bound on the discarded spectral tail; absent for non-spectral methods.
  std::optional<double> tail_bound;
  /// Set by the path sums when theta or theta' is within 0.05 of a wall.
  bool near_boundary = false;
};

}  // namespace boxkernel
