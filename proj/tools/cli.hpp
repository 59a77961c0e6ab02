#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace besicovitch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitResource = 2;
/// selftest ran but at least one example failed.
inline constexpr int kExitSelftestFailed = 3;

/// Runs one command line (without the program name). Results go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Executes the built-in example table, one PASS/FAIL line per example.
/// Returns the number of failures.
int selftest(std::ostream& out);

}  // namespace besicovitch::cli
