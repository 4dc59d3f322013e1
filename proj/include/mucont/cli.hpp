#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mucont::cli {

enum ExitCode : int { kOk = 0, kRefuted = 1, kUsage = 2 };

struct CommandResult {
  int exit_code = kOk;
  /// Report for standard output; empty on usage errors.
  std::string report;
  /// Message for standard error, naming the failing option or field.
  std::string error;
};

/// Runs one command line. `args[0]` is the program name; JSON inputs named
/// "-" are read from `in`.
CommandResult run(const std::vector<std::string>& args, std::istream& in);

}  // namespace mucont::cli
