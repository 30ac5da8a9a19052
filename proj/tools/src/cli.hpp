#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pvperf::cli {

/// Runs the command line `args` (args[0] is the program name). Report
/// output goes to `out` unless --out names a file; errors go to `err` as
/// one JSON object. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pvperf::cli
