#pragma once

#include <string>
#include <vector>

namespace rmt::cli {

inline constexpr const char* kVersion = "rmt 0.1.0";

// Exit codes: 0 ok, 1 identity failure, 2 usage, 3 numerical, 4 data.
int run(const std::vector<std::string>& args);

}  // namespace rmt::cli
