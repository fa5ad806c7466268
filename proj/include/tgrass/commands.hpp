#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgrass::cli {

/// Bad or missing flags; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for `tgrass <command> [flags]`; args exclude the program name.
/// Commands: simulate, screen, ingest-prices, bench, diagnose.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tgrass::cli
