#pragma once

#include <cstdint>
#include <ostream>

namespace predpower::cli {

enum ExitCode : int {
    kSuccess = 0,
    kValidationFailure = 1,
    kOutOfModel = 2,
    kIoFailure = 3,
};

/// Environment variable that replaces the built-in default seed.
inline constexpr const char* kSeedEnvVar = "PREDPOWER_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1994;

/// Runs one CLI invocation. Tables go to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace predpower::cli
