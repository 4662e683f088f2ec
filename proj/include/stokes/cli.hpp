#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stokes::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stokes::cli
