#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shafstats/arith.hpp"

namespace shafstats {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitData = 3,
  kExitCapacity = 4,
};

// Entry point of the shafstats command line tool. args[0] is the program
// name. Reports go to `out`, progress and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "1000", "10^6" or "1e6".
u64 parse_count(const std::string& text);

}  // namespace shafstats
