#ifndef IRRIPLAN_CLI_HPP
#define IRRIPLAN_CLI_HPP

#include <string>
#include <vector>

namespace irriplan {

// Command dispatch for {plan, cruise, compare, sweep, render}. `args`
// excludes the program name. Exit codes: 0 success, 1 parse error,
// 2 unreachable goal, 3 bad flags or spec validation.
int run_cli(const std::vector<std::string>& args);

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitUnreachable = 2;
constexpr int kExitBadFlags = 3;

}  // namespace irriplan

#endif
