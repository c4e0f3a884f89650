#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rephom {

// Exit codes: 0 expected outcome, 1 mathematical mismatch, 2 usage error,
// 3 internal consistency failure.
enum ExitCode { kExitOk = 0, kExitMismatch = 1, kExitUsage = 2, kExitInternal = 3 };

// args excludes the program name
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rephom
