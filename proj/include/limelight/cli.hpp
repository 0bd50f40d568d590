#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data
// error, 3 black-box protocol error.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace limelight {

inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitProtocol = 3;

int run(int argc, char** argv);

// `args` excludes the program name. Normal output goes to `out`, help and
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace limelight
