#pragma once

#include <string>
#include <vector>

namespace leapt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitEndpoint = 3;

// Entry point for the `leapt` tool; returns the process exit code.
int run(const std::vector<std::string>& args);

}  // namespace leapt::cli
