#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skewspec
{
//! Exit status convention of the command-line tool.
enum ExitStatus : int
{
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_usage = 2,
};

/*!
 * Run the skewspec command line with argv[0] as the program name.
 *
 * Subcommands: sample, spectrum, ensemble, verify, check-bounds.
 */
int run_cli(std::vector<std::string> const& argv, std::ostream& out, std::ostream& err);

}  // namespace skewspec
