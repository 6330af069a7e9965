#include "qtt/error.hpp"

namespace qtt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::NonConvergence: return "NonConvergence";
  case ErrorCode::NonFiniteSample: return "NonFiniteSample";
  case ErrorCode::NoSignChange: return "NoSignChange";
  case ErrorCode::MaxIterations: return "MaxIterations";
  case ErrorCode::NotUnimodal: return "NotUnimodal";
  case ErrorCode::IncompatibleUnits: return "IncompatibleUnits";
  case ErrorCode::DegenerateInput: return "DegenerateInput";
  case ErrorCode::BranchDivergence: return "BranchDivergence";
  case ErrorCode::NoBarrier: return "NoBarrier";
  case ErrorCode::RootBracketFailure: return "RootBracketFailure";
  case ErrorCode::MalformedDataFile: return "MalformedDataFile";
  case ErrorCode::InvalidConfig: return "InvalidConfig";
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

} // namespace qtt
