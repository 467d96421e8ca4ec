#pragma once

#include <ostream>

namespace poro {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCheck = 3;
inline constexpr int kExitRuntime = 4;

/// Entry point of the poro2d driver: subcommands run, converge, speeds, check.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace poro
