#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wroca::cli {

/// Exit codes shared by all subcommands.
enum Exit : int {
  kOk = 0,
  kNegative = 1,  // invalid automaton, witness found, not a pumping
  kInputError = 2,
  kUnknownSymbol = 3,
  kBudgetExceeded = 4,
  kBoundTooLarge = 5,
};

/// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wroca::cli
