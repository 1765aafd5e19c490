#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selmerstat {

// Dispatches one subcommand. Data goes to `out`, the version/config line and
// diagnostics to `err`. Exit codes: 0 success, 1 verification failure,
// 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selmerstat
