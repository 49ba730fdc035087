#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace k3stab::cli {

/// Exit codes: 0 success, 1 domain error (a structured error record is printed
/// in the selected format), 2 usage error.
enum ExitCode : int { Success = 0, DomainFailure = 1, UsageFailure = 2 };

/// Runs one k3stab invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k3stab::cli
