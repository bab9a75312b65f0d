#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imd/verify/criteria.hpp"

namespace imd::cli {

enum class Command { Phase, Critical, Gamma, Dist, Laplace, Verify };
enum class Format { Csv, Json };

struct Sweep {
  double hmin = -1.0;
  double hmax = 1.0;
  int hsteps = 21;
  double jmin = 0.0;
  double jmax = 3.0;
  int jsteps = 21;
};

struct RunConfig {
  Command command = Command::Phase;
  double h = 0.0;
  double J = 0.0;
  std::vector<int> N_list;
  std::optional<double> eta;
  std::optional<double> u;
  std::optional<Sweep> sweep;  // phase only
  double gamma_jmin = 1.5;
  double gamma_jmax = 50.0;
  int gamma_steps = 50;
  verify::Suite suite = verify::Suite::All;
  std::string output;  // empty: stdout
  std::optional<Format> format;  // unset: see default_format
};

// Bad flags, values, or combinations. Maps to exit status 64.
struct UsageError {
  std::string message;
};

// Outcome of parsing: a config, or text to print and a status to exit with
// (help, usage errors).
struct Parsed {
  std::optional<RunConfig> config;
  std::string message;
  int exit_code = 0;
};

Parsed parse_args(int argc, const char* const* argv);

/// json for phase and critical, csv for gamma, dist and laplace. verify has no
/// default and prints a plain-text report unless a format is requested.
std::optional<Format> default_format(Command command);

}  // namespace imd::cli
