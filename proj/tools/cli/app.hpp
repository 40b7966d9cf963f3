#ifndef CONTSPEC_CLI_APP_HPP
#define CONTSPEC_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "contspec/model.hpp"

namespace contspec::cli {

enum class Subcommand { Eigs, Sweep, Phase, Ep, Fano, Expand, Sigma, Jordan };

enum class OutputFormat { Csv, Json };

/// Fully resolved run configuration: config-file values seeded first, flags
/// layered on top.
struct CliConfig {
  Subcommand subcommand = Subcommand::Eigs;

  double alpha = 0.1;             // shared coupling strength
  Medium medium = Medium::OneD;   // continuum dimensionality
  double eps_a = 0.0;             // first level (eps_A on the symmetric line)
  double eps_b = 0.0;             // second level
  bool single_state = false;      // model one level instead of two

  std::string axis = "eps_a";     // swept parameter for line scans
  double lo = 0.0;                // scan start
  double hi = 0.0;                // scan end
  int n = 0;                      // scan sample count (>= 2)

  double a_lo = -0.3;             // phase grid bounds
  double a_hi = 0.3;
  double b_lo = -0.3;
  double b_hi = 0.3;
  int na = 0;                     // phase grid sizes (>= 2)
  int nb = 0;

  std::string expansion = "single";  // expand: single|two|fano-small|polar
  double theta = 0.7853981633974483; // polar angle (default pi/4, the meeting line)
  double eps_d = 0.0;                // detuning for the two-level local matrix
  bool bic = false;                  // fano: emit double-root certificates instead

  std::string out;                // output path; empty writes rows to stdout
  OutputFormat format = OutputFormat::Csv;
  int jobs = 1;                   // worker count (>= 1); output is identical for any value
};

/// Result of argv parsing. When `run` is false the process should exit with
/// `exit_code` after printing `message` (help text or a diagnostic).
struct ParseOutcome {
  bool run = false;
  int exit_code = 0;
  std::string message;
  CliConfig config;
};

/// Parses arguments (excluding argv[0]). `--config <file>` seeds values from
/// a JSON object with the same keys as CliConfig; explicit flags override it.
/// Exit codes on failure: 2 for usage/malformed config, 4 for an unreadable
/// config file.
ParseOutcome parse_config(const std::vector<std::string>& args);

/// Executes the configured pipeline. Rows go to config.out when set,
/// otherwise to `fallback_rows`; the one-line summary (row count, output
/// target, model warnings) goes to `summary`. Returns 0 on success, 2 on a
/// parameter-contract violation, 3 on a numerical failure, 4 on I/O errors.
int run(const CliConfig& config, std::ostream& summary, std::ostream& fallback_rows);

/// parse_config + run wired to stdout/stderr. The process exit code.
int main_entry(int argc, char** argv);

}  // namespace contspec::cli

#endif  // CONTSPEC_CLI_APP_HPP
