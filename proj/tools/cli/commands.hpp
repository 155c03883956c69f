#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace admd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

/// Seed used when --seed is omitted.
inline constexpr std::uint64_t kDefaultSeed = 20210601;

/// Entry point of the `admd` tool; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same as above with the arguments after the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace admd::cli
