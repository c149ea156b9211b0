#include "edgesim/error.hpp"

namespace edgesim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidCatalog: return "InvalidCatalog";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
    case ErrorCode::InferenceOnEmptySubmodel: return "InferenceOnEmptySubmodel";
    case ErrorCode::IncomparableSubmodels: return "IncomparableSubmodels";
    case ErrorCode::TopologyGenerationFailed: return "TopologyGenerationFailed";
    case ErrorCode::MalformedProblem: return "MalformedProblem";
    case ErrorCode::SolutionNotOptimal: return "SolutionNotOptimal";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::InvalidFractional: return "InvalidFractional";
    case ErrorCode::EmptyRecords: return "EmptyRecords";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace edgesim
