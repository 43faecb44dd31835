#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tripost {

// Exit codes: 0 success, 1 usage error, 2 instance error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInstance = 2;

// `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tripost
