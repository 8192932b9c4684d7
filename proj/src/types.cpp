#include "boxkernel/types.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "boxkernel/errors.hpp"

namespace boxkernel {

PotentialParameter::PotentialParameter(double nu) : nu_(nu) {
  if (!(nu >= 0.5) || !std::isfinite(nu)) {
    throw DomainError("nu must be a finite value >= 1/2");
  }
}

DimensionlessTime::DimensionlessTime(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be a finite value > 0");
  }
}

Angle::Angle(double theta) : theta_(theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw DomainError("theta must lie strictly inside (0, pi)");
  }
}

namespace {
constexpr std::array<std::pair<Method, std::string_view>, 5> kMethodTags{{
    {Method::spectral, "spectral"},
    {Method::closed_form, "closed-form"},
    {Method::path_sum_nu1, "pathsum-nu1"},
    {Method::path_sum_nu2, "pathsum-nu2"},
    {Method::path_sum_general, "pathsum-general"},
}};
}  // namespace

std::string_view to_string(Method m) noexcept {
  for (const auto& [method, tag] : kMethodTags) {
    if (method == m) return tag;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view tag) noexcept {
  for (const auto& [method, name] : kMethodTags) {
    if (name == tag) return method;
  }
  return std::nullopt;
}

}  // namespace boxkernel
