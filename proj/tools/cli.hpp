#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mwns::cli {

enum ExitCode { ok = 0, failure = 1, usage = 2, non_contraction = 3 };

// Runs one command line (args excludes the program name). Reports go to files
// under --out; `out` receives a one-line summary, `err` diagnostics.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mwns::cli
