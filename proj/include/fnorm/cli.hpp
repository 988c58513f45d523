#pragma once

// Command-line front end: norm, transform and verify subcommands.

#include <iosfwd>
#include <string>
#include <vector>

namespace fnorm {

inline constexpr const char* kToolName = "fnorm";
inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes beyond the verdict contract (0 pass, 1 fail, 2 hypothesis missing).
inline constexpr int kExitUsage = 64;
inline constexpr int kExitNotInSpace = 65;

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

/// Runs the tool on argv[1..] and returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fnorm
