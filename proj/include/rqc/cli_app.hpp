#pragma once

#include <string>
#include <vector>

namespace rqc {

// Dispatches one subcommand invocation (argv without the program name).
// Exit codes: 0 success, 2 parameter error, 3 guard violation,
// 4 rejection-cap exhaustion.
int run_cli(const std::vector<std::string>& args);

}  // namespace rqc
