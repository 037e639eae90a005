#pragma once

#include <ostream>

namespace seernf::cli {

// Entry point of the command line tool, exposed so tests can drive it
// in-process. argv follows main() conventions (argv[0] is the program name).
// Returns the process exit code; diagnostics go to `err`, results to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace seernf::cli
