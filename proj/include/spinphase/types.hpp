#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinphase {

using Complex = std::complex<double>;

/// Four-vector with real components. Index placement is documented at each use.
using Vec4 = Eigen::Vector4d;
using CVec4 = Eigen::Vector4cd;
using Tensor4 = Eigen::Matrix4d;
using CTensor4 = Eigen::Matrix4cd;

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

enum class ErrorKind {
  UnsupportedSpin,
  NotAntisymmetric,
  ZeroLambda,
  AlgebraViolation,
  DegenerateOperator,
  InconsistentMomentum,
  StepUnstable,
  InvalidArgument,
  ConfigError,
  IoError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace spinphase
