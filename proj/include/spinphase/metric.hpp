#pragma once

#include <array>

#include "spinphase/types.hpp"

namespace spinphase {

/// Minkowski metric with signature (+,-,-,-) and orientation eps^{0123} = +1.
///
/// The signature is carried as data so diagnostic code can run against a
/// deliberately corrupted metric (negative controls in the verification suite).
class Metric {
public:
  Metric() : diag_(1.0, -1.0, -1.0, -1.0) {}
  explicit Metric(const Vec4& diag) : diag_(diag) {}

  static const Metric& minkowski();

  double g(int mu, int nu) const { return mu == nu ? diag_[mu] : 0.0; }
  const Vec4& diagonal() const { return diag_; }
  Tensor4 tensor() const { return diag_.asDiagonal(); }

  /// Lower (or raise; the metric is its own inverse) a single index.
  template <typename Derived>
  auto lower(const Eigen::MatrixBase<Derived>& v) const {
    return (diag_.cast<typename Derived::Scalar>().asDiagonal() * v).eval();
  }

  /// a.b for two upper-index vectors.
  template <typename DA, typename DB>
  auto dot(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) const {
    using S = decltype(typename DA::Scalar{} * typename DB::Scalar{});
    S acc{};
    for (int mu = 0; mu < 4; ++mu) acc += diag_[mu] * a[mu] * b[mu];
    return acc;
  }

  /// Lower both indices of a rank-2 tensor.
  template <typename Derived>
  auto lower_both(const Eigen::MatrixBase<Derived>& t) const {
    auto d = diag_.cast<typename Derived::Scalar>().asDiagonal();
    return (d * t * d).eval();
  }

  /// Totally antisymmetric symbol with upper indices; eps^{0123} = +1.
  static int eps_upper(int a, int b, int c, int d);
  /// Lower-index symbol for this metric: eps_{abcd} = g_aa g_bb g_cc g_dd eps^{abcd}.
  double eps_lower(int a, int b, int c, int d) const {
    return diag_[a] * diag_[b] * diag_[c] * diag_[d] * eps_upper(a, b, c, d);
  }

private:
  Vec4 diag_;
};

/// Upper-index dual T*^{mn} = 1/2 eps^{mnrs} T_{rs} of an upper-index antisymmetric tensor.
/// Throws NotAntisymmetric when ||T + T^T|| exceeds tol.
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 4> dual(const Eigen::Matrix<Scalar, 4, 4>& upper, double tol = 1e-12,
                                 const Metric& metric = Metric::minkowski()) {
  if ((upper + upper.transpose()).norm() > tol * std::max(1.0, static_cast<double>(upper.norm()))) {
    throw Error(ErrorKind::NotAntisymmetric, "dual() requires an antisymmetric tensor");
  }
  const Eigen::Matrix<Scalar, 4, 4> low = metric.lower_both(upper);
  Eigen::Matrix<Scalar, 4, 4> out = Eigen::Matrix<Scalar, 4, 4>::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          const int e = Metric::eps_upper(m, n, r, s);
          if (e != 0) out(m, n) += 0.5 * static_cast<double>(e) * low(r, s);
        }
  return out;
}

/// Contraction eps_{mn rho lam} a^rho b^lam with both free indices down.
Tensor4 eps_contract_lower(const Vec4& a, const Vec4& b, const Metric& metric = Metric::minkowski());
/// Contraction eps^{mn rho sig} a_rho b_sig with both free indices up; inputs are upper-index vectors.
Tensor4 eps_contract_upper(const Vec4& a, const Vec4& b, const Metric& metric = Metric::minkowski());

}  // namespace spinphase
