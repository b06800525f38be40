#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stable_spectra::cli {

/// Exit codes shared by every command.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInputError = 2 };

/// Seed used when neither --seed nor STABLE_SPECTRA_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 1234567;

/// Runs the command line `args` (args[0] is the program name) writing reports
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stable_spectra::cli
