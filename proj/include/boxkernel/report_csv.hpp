#pragma once
// Comparison reports as CSV, one row per (theta, theta', lambda).

#include <iosfwd>
#include <string>
#include <string_view>

#include "boxkernel/verify.hpp"

namespace boxkernel::report_csv {

inline constexpr std::string_view kHeader =
    "theta,theta_p,lambda,method_a,method_b,value_a_re,value_a_im,value_b_re,value_b_im,abs_dev,rel_dev";

/// 17 significant digits; from_chars on the result returns the same bits.
std::string format_real(double x);

void write_csv(std::ostream& out, const verify::ComparisonReport& report);

/// Parses write_csv output. Derived fields are recomputed from the values; a stored
/// abs_dev or rel_dev that disagrees with the recomputation is a format error.
verify::ComparisonReport read_csv(std::istream& in);

}  // namespace boxkernel::report_csv
