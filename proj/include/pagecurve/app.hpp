#pragma once

#include <ostream>

namespace pagecurve {

/// Parses a command line (argv[0] is the program name) and dispatches to
/// the run, compare or sweep command. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& log);

}  // namespace pagecurve
