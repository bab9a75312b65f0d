#pragma once

#include <ostream>

#include "imd/cli/config.hpp"

namespace imd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

/// Executes a parsed configuration. Results go to config.output, or `out`
/// when no path is set; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run, with every failure mapped to an exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Worker count from IMD_THREADS, else the hardware concurrency. Throws
/// UsageError if the variable is set but not a positive integer.
unsigned thread_count();

}  // namespace imd::cli
