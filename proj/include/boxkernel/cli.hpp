#pragma once
// Command-line front end: kernel, compare, verify and sweep.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxkernel/types.hpp"
#include "boxkernel/verify.hpp"

namespace boxkernel::cli {

enum ExitCode : int {
  ok = 0,
  check_failed = 1,
  usage_error = 2,
  domain_error = 3,
  policy_unresolvable = 4,
};

/// Bad or missing flags, or flags that do not fit the subcommand.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { kernel, compare, verify, sweep };
enum class OutputFormat { csv, pretty };

struct RunConfig {
  Subcommand subcommand = Subcommand::kernel;
  double nu = 1.0;
  /// kernel: one value. compare, sweep: a strictly decreasing chain.
  std::vector<double> lambdas;
  std::optional<double> theta;
  std::optional<double> theta_p;
  /// compare without an explicit point uses the grid-size x grid-size interior grid.
  std::size_t grid_size = 9;
  std::vector<Method> methods;
  verify::EvaluationConfig evaluation;
  std::string suite = "all";
  /// compare: bound on max_rel_dev. sweep: bound on the last deviation.
  std::optional<double> tolerance;
  OutputFormat output = OutputFormat::csv;
  std::optional<std::string> output_path;
};

/// Fills subcommand defaults and checks every numeric field. Domain violations throw
/// DomainError and structural problems throw UsageError; both messages start with the flag.
RunConfig validate(RunConfig config);

/// Executes a validated config. Returns ok or check_failed; library errors propagate.
int run(const RunConfig& config, std::ostream& out);

/// Parses args (program name excluded), validates, runs and maps errors to exit codes.
int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The --help footer listing the exit codes.
std::string exit_code_help();

}  // namespace boxkernel::cli
