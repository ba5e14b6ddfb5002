#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitkit::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 2,
  kCapacityExceeded = 3,
  kIoFailure = 4,
};

inline constexpr const char* kToolVersion = "0.1.0";

// Runs one command line (without the program name). JSON documents go to
// `out`, human diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitkit::cli
