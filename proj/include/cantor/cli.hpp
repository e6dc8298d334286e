#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cantor {

/// Runs one CLI command. Arguments exclude the program name. Prints a JSON
/// run report to `out` and diagnostics to `err`; the report is deterministic
/// given the inputs and seed (elapsed time excepted). Returns the process
/// exit code: 0 iff every check the command performs passes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cantor
