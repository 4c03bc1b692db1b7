#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hhh {

// Exit codes of runCli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitMissingBaseCase = 3;

// args excludes the program name.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhh
