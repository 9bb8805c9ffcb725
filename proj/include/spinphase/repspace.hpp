#pragma once

#include <array>
#include <memory>

#include "spinphase/metric.hpp"
#include "spinphase/types.hpp"

namespace spinphase {

/// Spin label s = n/2 with n = 2s tensor factors of the Dirac representation.
class SpinLabel {
public:
  /// n = 2s, must be >= 1.
  static SpinLabel from_twice(int twice_spin);
  /// Accepts positive half-integers such as 0.5 or 1.0.
  static SpinLabel from_value(double s);

  int twice() const noexcept { return twice_; }
  double value() const noexcept { return 0.5 * twice_; }
  int factors() const noexcept { return twice_; }
  /// Dimension of the symmetric rank-n tensors over C^4: C(n+3, 3).
  int dimension() const noexcept;

  friend bool operator==(SpinLabel a, SpinLabel b) { return a.twice_ == b.twice_; }

private:
  explicit SpinLabel(int twice) : twice_(twice) {}
  int twice_;
};

using MatrixQuad = std::array<CMatrix, 4>;
using MatrixTensor = std::array<std::array<CMatrix, 4>, 4>;

/// Dirac-basis gamma matrices, upper index: gamma^0 = diag(I, -I), gamma^i = offdiag(sigma^i, -sigma^i).
struct GammaSet {
  MatrixQuad gamma;
  const CMatrix& parity() const { return gamma[0]; }
};

GammaSet build_gammas();

/// Orthonormal basis of the symmetric subspace of (C^4)^{(x)n}, as a 4^n x D isometry.
/// Columns are ordered by the sorted multiset of single-factor indices.
CMatrix sym_projector(int factors);

/// Dual of an antisymmetric tensor of matrices: T*^{mn} = 1/2 eps^{mnrs} T_{rs}.
MatrixTensor dual(const MatrixTensor& upper, double tol = 1e-12);

/// Spin-s matrix apparatus. Immutable after construction.
class RepMatrices {
public:
  SpinLabel spin() const noexcept { return spin_; }
  int dim() const noexcept { return static_cast<int>(parity_.rows()); }

  /// beta^mu, upper index.
  const MatrixQuad& beta() const noexcept { return beta_; }
  /// beta^{mn} = i s [beta^m, beta^n], upper indices.
  const MatrixTensor& beta_tensor() const noexcept { return beta_tensor_; }
  /// beta*^{mn}, upper indices.
  const MatrixTensor& beta_dual() const noexcept { return beta_dual_; }
  const CMatrix& parity() const noexcept { return parity_; }
  const CMatrix& projector() const noexcept { return projector_; }

  /// beta^mu p_mu for an upper-index momentum.
  CMatrix slash(const Vec4& p_upper) const;
  /// xi-bar = xi^dagger * parity, as a row vector.
  Eigen::RowVectorXcd bar(const CVector& xi) const { return xi.adjoint() * parity_; }
  /// xi-bar M xi.
  Complex bilinear(const CVector& xi, const CMatrix& m) const { return (bar(xi) * m * xi)(0, 0); }

  /// Eigenvalues of beta.p, sorted by real part.
  Eigen::VectorXcd spectrum(const Vec4& p_upper) const;

private:
  friend std::shared_ptr<const RepMatrices> build_rep(SpinLabel s);
  RepMatrices(SpinLabel s) : spin_(s) {}

  SpinLabel spin_;
  MatrixQuad beta_;
  MatrixTensor beta_tensor_;
  MatrixTensor beta_dual_;
  CMatrix parity_;
  CMatrix projector_;
};

using RepPtr = std::shared_ptr<const RepMatrices>;

/// Builds the representation for s in {1/2, 1}; UnsupportedSpin otherwise.
RepPtr build_rep(SpinLabel s);

/// Unprojected sum (1/2s) sum_k I (x) .. gamma^mu(k) .. (x) I on the full 4^n space.
CMatrix tensor_beta_unprojected(int factors, int mu);

}  // namespace spinphase
