#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace moralswf {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

// Runs one command. `args` excludes the program name, e.g.
// {"rank", "frobo.scenario", "--swf", "hm"}.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moralswf
