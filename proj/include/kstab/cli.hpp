#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kstab::cli {

enum ExitCode : int { pass = 0, fail = 1, usage = 2 };

/// Entry point behind the kstab binary. `args` excludes the program name.
///
///   kstab --list-cases
///   kstab verify (--case NAME ... | --config FILE ... | --all) [--format text|json] [--oracle-grid N]
///   kstab show NAME          preset config and lattice table
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kstab::cli
