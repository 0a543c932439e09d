#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circumdiv::cli {

/// Runs one command line (without the program name). Results go to `out`
/// (or the --out file), errors to `err` as JSON with a machine-readable
/// code. Returns 0 on success, 2 for a negative decision with a witness
/// document, 1 on error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace circumdiv::cli
