#include "boxkernel/report_csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <vector>

#include "boxkernel/errors.hpp"

namespace boxkernel::report_csv {

namespace {

constexpr std::size_t kColumns = 11;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_real(std::string_view text, std::size_t line_no) {
  double x = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw CsvFormatError("line " + std::to_string(line_no) + ": bad number '" + std::string(text) + "'");
  }
  return x;
}

Method parse_tag(std::string_view text, std::size_t line_no) {
  const auto m = parse_method(text);
  if (!m) throw CsvFormatError("line " + std::to_string(line_no) + ": unknown method '" + std::string(text) + "'");
  return *m;
}

}  // namespace

std::string format_real(double x) {
  std::array<char, 64> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf.data(), end);
}

void write_csv(std::ostream& out, const verify::ComparisonReport& report) {
  out << kHeader << '\n';
  const std::string a(to_string(report.method_a));
  const std::string b(to_string(report.method_b));
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    const auto& g = report.grid[i];
    out << format_real(g.theta) << ',' << format_real(g.theta_p) << ',' << format_real(g.lambda) << ',' << a << ','
        << b << ',' << format_real(report.values_a[i].real()) << ',' << format_real(report.values_a[i].imag()) << ','
        << format_real(report.values_b[i].real()) << ',' << format_real(report.values_b[i].imag()) << ','
        << format_real(report.abs_dev[i]) << ',' << format_real(report.rel_dev[i]) << '\n';
  }
}

verify::ComparisonReport read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw CsvFormatError("missing or unexpected header row");
  }
  verify::ComparisonReport report;
  std::vector<double> stored_abs;
  std::vector<double> stored_rel;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != kColumns) {
      throw CsvFormatError("line " + std::to_string(line_no) + ": expected 11 fields");
    }
    const Method a = parse_tag(f[3], line_no);
    const Method b = parse_tag(f[4], line_no);
    if (report.grid.empty()) {
      report.method_a = a;
      report.method_b = b;
    } else if (a != report.method_a || b != report.method_b) {
      throw CsvFormatError("line " + std::to_string(line_no) + ": methods change within one report");
    }
    report.grid.push_back({parse_real(f[0], line_no), parse_real(f[1], line_no), parse_real(f[2], line_no)});
    report.values_a.emplace_back(parse_real(f[5], line_no), parse_real(f[6], line_no));
    report.values_b.emplace_back(parse_real(f[7], line_no), parse_real(f[8], line_no));
    stored_abs.push_back(parse_real(f[9], line_no));
    stored_rel.push_back(parse_real(f[10], line_no));
  }
  verify::derive_report_fields(report);
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    if (stored_abs[i] != report.abs_dev[i] || stored_rel[i] != report.rel_dev[i]) {
      throw CsvFormatError("row " + std::to_string(i + 1) + ": stored deviations disagree with the values");
    }
  }
  return report;
}

}  // namespace boxkernel::report_csv
