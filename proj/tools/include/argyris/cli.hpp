#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace argyris {

/// Runs the adaptive benchmark driver.  Arguments exclude the program name.
/// CSV goes to --out or to `out`; diagnostics to `err`.  Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace argyris
