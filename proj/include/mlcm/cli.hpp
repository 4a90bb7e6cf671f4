#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlcm {

// Full command-line driver (subcommands: synth, combine, eval, bench).
// args excludes the program name. Returns the process exit code; failures
// print a machine-readable error JSON to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mlcm
