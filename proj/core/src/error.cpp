#include "holonomy/error.hpp"

namespace holonomy {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::PointOnPath: return "PointOnPath";
    case ErrorCode::NonClosedPath: return "NonClosedPath";
    case ErrorCode::NonContiguous: return "NonContiguous";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::NonCommutingResidues: return "NonCommutingResidues";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::FlatnessNotAcknowledged: return "FlatnessNotAcknowledged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace holonomy
