#include "monfg/error.hpp"

namespace monfg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NonDifferentiable: return "NonDifferentiable";
    case ErrorKind::ZeroMarginal: return "ZeroMarginal";
    case ErrorKind::OptimizationFailed: return "OptimizationFailed";
    case ErrorKind::TooManyModifications: return "TooManyModifications";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::GridTooLarge: return "GridTooLarge";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace monfg
