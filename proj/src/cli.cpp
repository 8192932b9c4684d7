#include "boxkernel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "boxkernel/errors.hpp"
#include "boxkernel/report_csv.hpp"
#include "boxkernel/suites.hpp"

namespace boxkernel::cli {

namespace {

using report_csv::format_real;

// Constructs a domain type, prefixing any failure with the flag that supplied it.
template <class T>
T checked(const char* flag, double value) {
  try {
    return T(value);
  } catch (const DomainError& e) {
    throw DomainError(std::string(flag) + ": " + e.what());
  }
}

std::string fixed_width(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + ' ' : s + std::string(width - s.size(), ' ');
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::vector<verify::AnglePair> angle_pairs(const RunConfig& c) {
  if (c.theta) return {{Angle(*c.theta), Angle(*c.theta_p)}};
  return verify::interior_grid(c.grid_size);
}

std::vector<DimensionlessTime> chain_of(const RunConfig& c) {
  std::vector<DimensionlessTime> chain;
  for (double l : c.lambdas) chain.emplace_back(l);
  return chain;
}

int run_kernel(const RunConfig& c, std::ostream& out) {
  const auto est = verify::evaluate(c.methods[0], PotentialParameter(c.nu), Angle(*c.theta), Angle(*c.theta_p),
                                    DimensionlessTime(c.lambdas[0]), c.evaluation);
  const bool complex_value = is_complex_method(est.method);
  if (c.output == OutputFormat::csv) {
    out << format_real(est.value.real());
    if (complex_value) out << ',' << format_real(est.value.imag());
    out << '\n';
    return ok;
  }
  out << "method       " << to_string(est.method) << '\n';
  out << "value        " << format_real(est.value.real());
  if (complex_value) out << " + " << format_real(est.value.imag()) << " i";
  out << '\n';
  out << "terms        " << est.terms_used << '\n';
  if (est.tail_bound) out << "tail bound   " << sci(*est.tail_bound) << '\n';
  if (est.near_boundary) out << "note         within 0.05 of a wall\n";
  return ok;
}

void print_compare_pretty(const verify::ComparisonReport& r, double nu, std::ostream& out) {
  out << "nu " << format_real(nu) << ": " << to_string(r.method_b) << " against " << to_string(r.method_a) << ", "
      << r.grid.size() << " rows\n\n";
  out << fixed_width("theta", 10) << fixed_width("theta'", 10) << fixed_width("lambda", 10) << fixed_width("a", 26)
      << fixed_width("b", 26) << "rel_dev\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    char head[64];
    std::snprintf(head, sizeof head, "%-10.4f%-10.4f%-10.4g", r.grid[i].theta, r.grid[i].theta_p, r.grid[i].lambda);
    out << head << fixed_width(format_real(r.values_a[i].real()), 26)
        << fixed_width(format_real(r.values_b[i].real()), 26) << sci(r.rel_dev[i]) << '\n';
  }
  out << "\nmax_rel_dev  " << sci(r.max_rel_dev) << '\n';
  if (r.convergence_ratios) {
    // Rows at rounding level give 0/0 or x/0; only finite ratios say anything about the order.
    std::vector<double> finite;
    for (double x : *r.convergence_ratios) {
      if (std::isfinite(x) && x > 0.0) finite.push_back(x);
    }
    out << "ratios       " << finite.size() << " finite of " << r.convergence_ratios->size();
    if (!finite.empty()) {
      const auto [lo, hi] = std::minmax_element(finite.begin(), finite.end());
      out << ", range " << sci(*lo) << " .. " << sci(*hi);
    }
    out << '\n';
  }
  if (r.im_over_re) {
    out << "max |Im|/|Re| " << sci(*std::max_element(r.im_over_re->begin(), r.im_over_re->end())) << '\n';
  }
}

int run_compare(const RunConfig& c, std::ostream& out) {
  const auto pairs = angle_pairs(c);
  const auto chain = chain_of(c);
  const auto report =
      verify::compare_methods(PotentialParameter(c.nu), pairs, chain, c.methods[0], c.methods[1], c.evaluation);
  if (c.output == OutputFormat::csv) {
    report_csv::write_csv(out, report);
  } else {
    print_compare_pretty(report, c.nu, out);
  }
  return c.tolerance && !(report.max_rel_dev <= *c.tolerance) ? check_failed : ok;
}

int run_sweep(const RunConfig& c, std::ostream& out) {
  const auto pairs = angle_pairs(c);
  const auto chain = chain_of(c);
  const auto r = verify::compare_methods(PotentialParameter(c.nu), pairs, chain, c.methods[0], c.methods[1], c.evaluation);
  const bool csv = c.output == OutputFormat::csv;
  if (csv) {
    out << "theta,theta_p,lambda,rel_dev,ratio,im_over_re\n";
  } else {
    out << "nu " << format_real(c.nu) << ": " << to_string(r.method_b) << " against " << to_string(r.method_a)
        << " at (" << format_real(*c.theta) << ", " << format_real(*c.theta_p) << ")\n\n"
        << fixed_width("lambda", 12) << fixed_width("rel_dev", 12) << fixed_width("ratio", 12) << "|Im|/|Re|\n";
  }
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    const double ratio = i == 0 ? 0.0 : r.rel_dev[i - 1] / r.rel_dev[i];
    if (csv) {
      out << format_real(r.grid[i].theta) << ',' << format_real(r.grid[i].theta_p) << ','
          << format_real(r.grid[i].lambda) << ',' << format_real(r.rel_dev[i]) << ',';
      if (i > 0) out << format_real(ratio);
      out << ',';
      if (r.im_over_re) out << format_real((*r.im_over_re)[i]);
      out << '\n';
    } else {
      char lam[32];
      std::snprintf(lam, sizeof lam, "%.6g", r.grid[i].lambda);
      out << fixed_width(lam, 12) << fixed_width(sci(r.rel_dev[i]), 12)
          << fixed_width(i > 0 ? sci(ratio) : "", 12) << (r.im_over_re ? sci((*r.im_over_re)[i]) : "") << '\n';
    }
  }
  return c.tolerance && !(r.rel_dev.back() <= *c.tolerance) ? check_failed : ok;
}

int run_verify(const RunConfig& c, std::ostream& out) {
  const auto results = suites::run_suite(c.suite, PotentialParameter(c.nu), c.evaluation);
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  if (c.output == OutputFormat::csv) {
    out << "suite,check,measured,bound,passed\n";
    for (const auto& r : results) {
      out << r.suite << ',' << r.name << ',' << format_real(r.measured) << ',' << r.bound << ','
          << (r.passed ? "true" : "false") << '\n';
    }
  } else {
    for (const auto& r : results) {
      out << (r.passed ? "PASS  " : "FAIL  ") << fixed_width(r.suite, 16) << fixed_width(r.name, 48)
          << fixed_width(sci(r.measured), 12) << r.bound << '\n';
    }
    out << '\n' << passed << '/' << results.size() << " checks passed (nu = " << format_real(c.nu) << ")\n";
  }
  return static_cast<std::size_t>(passed) == results.size() ? ok : check_failed;
}

}  // namespace

std::string exit_code_help() {
  return "Exit codes:\n"
         "  0  success; every requested check is within tolerance\n"
         "  1  a check or tolerance failed (verify, or compare/sweep with --tolerance)\n"
         "  2  usage error: unknown or missing flags, malformed values, unwritable --output-path\n"
         "  3  domain error: theta outside (0, pi), lambda <= 0, nu < 1/2, method not defined for nu\n"
         "  4  spectral truncation unresolvable: tail bound not reached within --n-cap terms";
}

RunConfig validate(RunConfig c) {
  checked<PotentialParameter>("--nu", c.nu);
  if (c.theta.has_value() != c.theta_p.has_value()) {
    throw UsageError("--theta and --theta-p must be given together");
  }
  if (c.theta) {
    checked<Angle>("--theta", *c.theta);
    checked<Angle>("--theta-p", *c.theta_p);
  }
  if (c.evaluation.path_sum.k_max < 1) {
    throw DomainError("--k-max: must be >= 1");
  }
  if (!(c.evaluation.truncation.epsilon_tail > 0.0)) {
    throw DomainError("--epsilon-tail: must be > 0");
  }
  if (c.tolerance && !(*c.tolerance >= 0.0)) {
    throw DomainError("--tolerance: must be >= 0");
  }

  switch (c.subcommand) {
    case Subcommand::kernel:
      if (c.lambdas.size() != 1) throw UsageError("--lambda: kernel takes exactly one value");
      if (!c.theta) throw UsageError("--theta and --theta-p are required");
      if (c.methods.empty()) c.methods = {Method::spectral};
      if (c.methods.size() != 1) throw UsageError("--method: kernel takes exactly one method");
      break;
    case Subcommand::compare:
    case Subcommand::sweep:
      if (c.lambdas.empty()) c.lambdas = {0.4, 0.2, 0.1, 0.05};
      if (c.subcommand == Subcommand::sweep) {
        if (!c.theta) {
          c.theta = 1.3;
          c.theta_p = 1.5;
        }
        if (c.methods.empty()) c.methods = {Method::spectral, Method::closed_form};
      }
      if (c.methods.size() != 2) throw UsageError("--methods: expected two comma-separated methods");
      if (c.grid_size < 1) throw UsageError("--grid-size: must be >= 1");
      break;
    case Subcommand::verify:
      break;
  }

  for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
    checked<DimensionlessTime>(c.lambdas.size() == 1 ? "--lambda" : "--lambda-chain", c.lambdas[i]);
    if (i > 0 && !(c.lambdas[i] < c.lambdas[i - 1])) {
      throw UsageError("--lambda-chain: values must be strictly decreasing");
    }
  }
  for (Method m : c.methods) {
    if (m == Method::path_sum_nu1 && c.nu != 1.0) throw DomainError("--method: pathsum-nu1 needs --nu 1");
    if (m == Method::path_sum_nu2 && c.nu != 2.0) throw DomainError("--method: pathsum-nu2 needs --nu 2");
  }
  return c;
}

int run(const RunConfig& c, std::ostream& out) {
  switch (c.subcommand) {
    case Subcommand::kernel:
      return run_kernel(c, out);
    case Subcommand::compare:
      return run_compare(c, out);
    case Subcommand::verify:
      return run_verify(c, out);
    case Subcommand::sweep:
      return run_sweep(c, out);
  }
  return usage_error;
}

int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euclidean kernel of a particle in a box with a nu(nu-1)/sin^2 potential", "boxkernel"};
  app.footer(exit_code_help());
  app.require_subcommand(1);

  RunConfig config;
  std::optional<double> lambda;
  std::vector<double> chain;
  std::string method;
  std::vector<std::string> methods;
  std::string truncation = "target";
  std::string prescription = "A";
  std::string output;
  std::string output_path;
  std::optional<double> theta, theta_p, tolerance;

  const std::vector<std::string> method_tags{"spectral", "closed-form", "pathsum-nu1", "pathsum-nu2",
                                             "pathsum-general"};
  std::vector<std::string> suite_tags = suites::suite_names();
  suite_tags.emplace_back("all");

  auto* kernel = app.add_subcommand("kernel", "Evaluate K(theta, theta'; lambda) with one method");
  auto* compare = app.add_subcommand("compare", "Compare two methods over an angle grid and a lambda chain (CSV)");
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites and print measured deviations");
  auto* sweep = app.add_subcommand("sweep", "Deviation and halving ratios along a lambda chain at one point");

  for (auto* sub : {kernel, compare, verify_cmd, sweep}) {
    sub->footer(exit_code_help());
    sub->add_option("--nu", config.nu, "Potential parameter, >= 1/2")->capture_default_str();
    sub->add_option("--k-max", config.evaluation.path_sum.k_max, "Path sums run over |k| <= k-max")
        ->capture_default_str();
    sub->add_option("--prescription", prescription, "Reflection phase branch: A (default) or B")
        ->check(CLI::IsMember({"A", "B"}));
    sub->add_option("--truncation", truncation, "Spectral truncation: target (tail bound) or fixed")
        ->check(CLI::IsMember({"target", "fixed"}));
    sub->add_option("--n-terms", config.evaluation.truncation.n_terms, "Terms for --truncation fixed")
        ->capture_default_str();
    sub->add_option("--epsilon-tail", config.evaluation.truncation.epsilon_tail, "Tail bound for --truncation target")
        ->capture_default_str();
    sub->add_option("--n-cap", config.evaluation.truncation.n_cap, "Largest admissible number of spectral terms")
        ->capture_default_str();
    sub->add_option("--output", output, "csv or pretty")->check(CLI::IsMember({"csv", "pretty"}));
    sub->add_option("--output-path", output_path, "Write to this file instead of stdout");
  }
  for (auto* sub : {kernel, compare, sweep}) {
    sub->add_option("--theta", theta, "First angle, in (0, pi)");
    sub->add_option("--theta-p", theta_p, "Second angle, in (0, pi)");
  }
  kernel->add_option("--lambda", lambda, "Dimensionless time, > 0")->required();
  kernel->add_option("--method", method, "spectral, closed-form, pathsum-nu1, pathsum-nu2 or pathsum-general")
      ->check(CLI::IsMember(method_tags));
  for (auto* sub : {compare, sweep}) {
    auto* single = sub->add_option("--lambda", lambda, "A one-element chain");
    sub->add_option("--lambda-chain", chain, "Strictly decreasing, comma separated (default 0.4,0.2,0.1,0.05)")
        ->delimiter(',')
        ->excludes(single);
    sub->add_option("--methods", methods, "Reference and candidate, comma separated")
        ->delimiter(',')
        ->check(CLI::IsMember(method_tags));
    sub->add_option("--tolerance", tolerance, "Fail (exit 1) when the deviation exceeds this");
  }
  compare->add_option("--grid-size", config.grid_size, "m x m interior grid when no point is given")
      ->capture_default_str();
  verify_cmd->add_option("--suite", config.suite, "Suite name or all")->check(CLI::IsMember(suite_tags));

  std::vector<const char*> argv{"boxkernel"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  if (kernel->parsed()) config.subcommand = Subcommand::kernel;
  if (compare->parsed()) config.subcommand = Subcommand::compare;
  if (verify_cmd->parsed()) config.subcommand = Subcommand::verify;
  if (sweep->parsed()) config.subcommand = Subcommand::sweep;

  if (lambda) config.lambdas = {*lambda};
  if (!chain.empty()) config.lambdas = chain;
  config.theta = theta;
  config.theta_p = theta_p;
  config.tolerance = tolerance;
  if (!method.empty()) config.methods = {*parse_method(method)};
  for (const auto& m : methods) config.methods.push_back(*parse_method(m));
  if (truncation == "fixed") config.evaluation.truncation.mode = spectral::TruncationPolicy::Mode::fixed_terms;
  config.evaluation.path_sum.prescription =
      prescription == "B" ? pathsum::Prescription::principal : pathsum::Prescription::winding;
  if (output.empty()) {
    config.output = config.subcommand == Subcommand::verify ? OutputFormat::pretty : OutputFormat::csv;
  } else {
    config.output = output == "pretty" ? OutputFormat::pretty : OutputFormat::csv;
  }
  if (!output_path.empty()) config.output_path = output_path;

  try {
    config = validate(std::move(config));
    std::ostringstream buffer;
    const int status = run(config, buffer);
    if (config.output_path) {
      std::ofstream file(*config.output_path, std::ios::binary);
      if (!(file << buffer.str()) || !file.flush()) {
        err << "--output-path: cannot write " << *config.output_path << '\n';
        return usage_error;
      }
    } else {
      out << buffer.str();
    }
    return status;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage_error;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return domain_error;
  } catch (const PolicyUnresolvable& e) {
    err << "spectral truncation: " << e.what() << '\n';
    return policy_unresolvable;
  }
}

}  // namespace boxkernel::cli
