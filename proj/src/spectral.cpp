#include "spinphase/spectral.hpp"

#include <limits>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinphase {

Spectral spectral_decomposition(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::DegenerateOperator, "eigensolver did not converge");
  const Eigen::VectorXcd raw = es.eigenvalues();
  const long n = m.rows();

  double scale = 1.0;
  for (long i = 0; i < n; ++i) scale = std::max(scale, std::abs(raw[i]));
  const double tol = kClusterTolerance * scale;

  // group repeated eigenvalues; each group gets its eigenspace from the null space
  // of (M - mu), which stays well conditioned where raw eigenvectors collapse
  std::vector<std::vector<long>> groups;
  std::vector<bool> used(n, false);
  for (long i = 0; i < n; ++i) {
    if (used[i]) continue;
    groups.push_back({i});
    used[i] = true;
    for (long j = i + 1; j < n; ++j)
      if (!used[j] && std::abs(raw[j] - raw[i]) < tol) {
        groups.back().push_back(j);
        used[j] = true;
      }
  }

  Spectral out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  long col = 0;
  for (const auto& g : groups) {
    Complex mu = 0.0;
    for (long i : g) mu += raw[i];
    mu /= static_cast<double>(g.size());
    const CMatrix shifted = m - mu * CMatrix::Identity(n, n);
    Eigen::JacobiSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
    const long k = static_cast<long>(g.size());
    out.vectors.middleCols(col, k) = svd.matrixV().rightCols(k);
    out.values.segment(col, k).setConstant(mu);
    col += k;
  }

  Eigen::JacobiSVD<CMatrix> svd(out.vectors);
  const auto& sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  out.condition = smin > 0.0 ? sv[0] / smin : std::numeric_limits<double>::infinity();
  if (std::isfinite(out.condition)) out.inverse = out.vectors.inverse();
  return out;
}

CMatrix expm_pade(const CMatrix& m) { return m.exp(); }

}  // namespace spinphase
