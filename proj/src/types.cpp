#include "spinphase/types.hpp"

namespace spinphase {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedSpin: return "UnsupportedSpin";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::ZeroLambda: return "ZeroLambda";
    case ErrorKind::AlgebraViolation: return "AlgebraViolation";
    case ErrorKind::DegenerateOperator: return "DegenerateOperator";
    case ErrorKind::InconsistentMomentum: return "InconsistentMomentum";
    case ErrorKind::StepUnstable: return "StepUnstable";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace spinphase
