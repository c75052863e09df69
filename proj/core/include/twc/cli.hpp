#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twc {

// Batch command-line surface: region, sweep, simulate, decompose, plan,
// verify-all. Returns the process exit status; all output goes to the given
// streams so the commands stay testable in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace twc
