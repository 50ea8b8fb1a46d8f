#pragma once

#include <string>
#include <vector>

namespace kconc::cli {

/// Runs the kconc command line. Returns the process exit code:
/// 0 success, 2 configuration error, 3 data error, 4 numerical degeneracy.
int run_cli(int argc, char** argv);
/// Same, with the arguments after the program name.
int run_cli(std::vector<std::string> args);

}  // namespace kconc::cli
