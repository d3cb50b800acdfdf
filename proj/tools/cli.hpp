#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kempner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitInvalidArgs = 2;
inline constexpr int kExitCapacity = 3;

/// Keys of every JSON row object and the CSV header, in order.
const std::vector<std::string>& record_keys();

/// Parses and runs one subcommand. Results go to `out` (or to the --out
/// file), diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kempner::cli
