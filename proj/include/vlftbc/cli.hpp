#pragma once

#include <string>
#include <vector>

namespace vlftbc {

// Runs a subcommand; stdout text goes to `out`, diagnostics to `err`.
// Exit codes: 0 success, 1 verification failure, 2 input/usage error.
int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err);

}  // namespace vlftbc
