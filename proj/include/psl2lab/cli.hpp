#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psl2lab::cli {

/// Runs one subcommand (args excludes the program name). Reports go to `out`
/// (and to --out/<subcommand>.<ext> when --out is given); the resolved
/// configuration and diagnostics go to `err`.
///
/// Exit status: 0 on success, 1 on a precondition or input error, 2 on a
/// usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psl2lab::cli
