#pragma once

#include <stdexcept>
#include <string>

namespace edgesim {

enum class ErrorCode {
  InvalidArgument,
  InvalidCatalog,
  InvalidNetwork,
  InferenceOnEmptySubmodel,
  IncomparableSubmodels,
  TopologyGenerationFailed,
  MalformedProblem,
  SolutionNotOptimal,
  UnknownModel,
  InvalidFractional,
  EmptyRecords,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers (and tests)
// can tell the documented error paths apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace edgesim
