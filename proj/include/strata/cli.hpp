// Command-line front end. Exit codes: 0 success, 2 invalid input or guard
// exceeded, 3 internal-consistency failure.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strata {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitConsistency = 3;

/// Cache directory override when --cache-dir is absent.
inline constexpr const char* kCacheDirEnv = "STRATA_CACHE_DIR";

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace strata
