#pragma once

#include <iosfwd>

namespace kronsync {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;            // ran; `check`: synchronizes
inline constexpr int kExitBadInput = 1;      // malformed input or options
inline constexpr int kExitNumerical = 2;     // solver/integration failure
inline constexpr int kExitNoSync = 3;        // verdict "does not synchronize"
inline constexpr int kExitInconclusive = 4;  // margin inside the zero band,
                                             // or gray-band simulation

/// Full front end: parses argv, dispatches, maps errors onto exit codes.
/// Streams are injected so tests can capture byte-exact output.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace kronsync
