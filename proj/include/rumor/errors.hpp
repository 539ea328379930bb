#pragma once

#include <stdexcept>
#include <string>

namespace rumor {

// Exit codes used by the command-line front end; each exception type maps to one.
enum class ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kNonConvergence = 2,
  kResourceCap = 3,
};

/// Rejected input: bad model parameters, out-of-domain arguments, malformed flags.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric procedure hit its iteration cap without meeting its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simulation run exceeded its vertex budget.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rumor
