#pragma once

#include "spinphase/types.hpp"

namespace spinphase {

/// Eigendecomposition M = V diag(values) V^{-1} of a small dense matrix.
struct Spectral {
  Eigen::VectorXcd values;
  CMatrix vectors;
  CMatrix inverse;
  /// 2-norm condition number of the eigenvector matrix.
  double condition = 0.0;
};

/// Eigenvalues closer than kClusterTolerance * max(1, max |value|) share one
/// eigenspace, taken from the null space of (M - mean value).
Spectral spectral_decomposition(const CMatrix& m);

inline constexpr double kClusterTolerance = 1e-5;

/// Above this eigenbasis condition number the eigenvector route is not trusted.
inline constexpr double kMaxEigenCondition = 1e8;

/// exp(m) by scaling and squaring with Pade approximants.
CMatrix expm_pade(const CMatrix& m);

}  // namespace spinphase
