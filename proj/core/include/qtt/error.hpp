#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtt {

enum class ErrorCode {
  NonConvergence,
  NonFiniteSample,
  NoSignChange,
  MaxIterations,
  NotUnimodal,
  IncompatibleUnits,
  DegenerateInput,
  BranchDivergence,
  NoBarrier,
  RootBracketFailure,
  MalformedDataFile,
  InvalidConfig,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can emit a machine-readable summary.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorCode code_;
  std::string detail_;
};

} // namespace qtt
