// cli.hpp: the `lmg` and `bcs` command-line front ends as callable functions.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pairzero::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kNumerical = 3 };

inline constexpr const char* kToolVersion = "1.0.0";
// default worker count when --threads is absent
inline constexpr const char* kThreadsEnv = "PAIRZERO_THREADS";

// args excludes the program name. Tables go to `out` unless --out is given;
// diagnostics and skipped-sample notes go to `err`.
int run_lmg(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_bcs(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pairzero::cli
