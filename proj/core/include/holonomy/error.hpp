#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holonomy {

enum class ErrorCode {
  InvalidArgument,
  InvalidPath,
  PointOnPath,
  NonClosedPath,
  NonContiguous,
  PoleProximity,
  NoConvergence,
  NonFinite,
  DimensionMismatch,
  DegenerateConfiguration,
  NonCommutingResidues,
  UnknownLabel,
  BasisMismatch,
  NotUnitary,
  NotInvolution,
  Singular,
  FlatnessNotAcknowledged,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace holonomy
