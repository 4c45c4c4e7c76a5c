#ifndef FRACSTOCH_CLI_HPP
#define FRACSTOCH_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>

namespace fracstoch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitAccuracy = 3;

/// Entry point of the `fracstoch` executable. Subcommands: ml, stability,
/// moment, simulate, spde, verify. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 17 significant digits; round-trips every double.
std::string format_double(double v);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace fracstoch::cli

#endif  // FRACSTOCH_CLI_HPP
