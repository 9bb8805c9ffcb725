#include "spinphase/repspace.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace spinphase {

namespace {

CMatrix kron_power(const std::vector<CMatrix>& factors) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& f : factors) out = Eigen::kroneckerProduct(out, f).eval();
  return out;
}

// All non-decreasing index sequences of length n over {0,1,2,3}.
void multisets(int n, int start, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == n) {
    out.push_back(current);
    return;
  }
  for (int k = start; k < 4; ++k) {
    current.push_back(k);
    multisets(n, k, current, out);
    current.pop_back();
  }
}

long flat_index(const std::vector<int>& idx) {
  long flat = 0;
  for (int k : idx) flat = flat * 4 + k;
  return flat;
}

}  // namespace

SpinLabel SpinLabel::from_twice(int twice_spin) {
  if (twice_spin < 1) throw Error(ErrorKind::UnsupportedSpin, "spin must be a positive half-integer");
  return SpinLabel(twice_spin);
}

SpinLabel SpinLabel::from_value(double s) {
  const double twice = 2.0 * s;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-12 || rounded < 1.0)
    throw Error(ErrorKind::UnsupportedSpin, "spin must be a positive half-integer, got " + std::to_string(s));
  return SpinLabel(static_cast<int>(rounded));
}

int SpinLabel::dimension() const noexcept {
  const int n = twice_;
  return (n + 3) * (n + 2) * (n + 1) / 6;
}

GammaSet build_gammas() {
  using namespace std::complex_literals;
  Eigen::Matrix2cd sx, sy, sz, id;
  sx << 0, 1, 1, 0;
  sy << 0, -1i, 1i, 0;
  sz << 1, 0, 0, -1;
  id.setIdentity();

  GammaSet g;
  g.gamma[0] = CMatrix::Zero(4, 4);
  g.gamma[0].topLeftCorner(2, 2) = id;
  g.gamma[0].bottomRightCorner(2, 2) = -id;
  const std::array<Eigen::Matrix2cd, 3> sigma{sx, sy, sz};
  for (int i = 0; i < 3; ++i) {
    CMatrix m = CMatrix::Zero(4, 4);
    m.topRightCorner(2, 2) = sigma[i];
    m.bottomLeftCorner(2, 2) = -sigma[i];
    g.gamma[i + 1] = m;
  }
  return g;
}

CMatrix sym_projector(int factors) {
  if (factors < 1) throw Error(ErrorKind::InvalidArgument, "sym_projector needs at least one factor");
  std::vector<std::vector<int>> sets;
  std::vector<int> scratch;
  multisets(factors, 0, scratch, sets);

  long full = 1;
  for (int k = 0; k < factors; ++k) full *= 4;
  CMatrix iso = CMatrix::Zero(full, static_cast<long>(sets.size()));
  for (std::size_t col = 0; col < sets.size(); ++col) {
    std::vector<int> perm = sets[col];
    // next_permutation from the sorted sequence visits each distinct arrangement once
    do {
      iso(flat_index(perm), static_cast<long>(col)) = 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    iso.col(static_cast<long>(col)).normalize();
  }
  return iso;
}

MatrixTensor dual(const MatrixTensor& upper, double tol) {
  const Metric& g = Metric::minkowski();
  double scale = 1.0;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      scale = std::max(scale, upper[m][n].norm());
      if ((upper[m][n] + upper[n][m]).norm() > tol * scale)
        throw Error(ErrorKind::NotAntisymmetric, "dual() requires an antisymmetric tensor of matrices");
    }

  const auto rows = upper[0][0].rows();
  const auto cols = upper[0][0].cols();
  MatrixTensor out;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      out[m][n] = CMatrix::Zero(rows, cols);
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          const int e = Metric::eps_upper(m, n, r, s);
          if (e != 0) out[m][n] += (0.5 * e * g.g(r, r) * g.g(s, s)) * upper[r][s];
        }
    }
  return out;
}

CMatrix tensor_beta_unprojected(int factors, int mu) {
  const GammaSet g = build_gammas();
  const CMatrix id = CMatrix::Identity(4, 4);
  long full = 1;
  for (int k = 0; k < factors; ++k) full *= 4;
  CMatrix sum = CMatrix::Zero(full, full);
  for (int slot = 0; slot < factors; ++slot) {
    std::vector<CMatrix> fs(factors, id);
    fs[slot] = g.gamma[mu];
    sum += kron_power(fs);
  }
  return sum / static_cast<double>(factors);
}

RepPtr build_rep(SpinLabel s) {
  if (s.twice() > 2) throw Error(ErrorKind::UnsupportedSpin, "supported spins are 1/2 and 1");

  const int n = s.factors();
  const GammaSet g = build_gammas();
  auto rep = std::shared_ptr<RepMatrices>(new RepMatrices(s));
  rep->projector_ = sym_projector(n);
  const CMatrix& v = rep->projector_;

  for (int mu = 0; mu < 4; ++mu) rep->beta_[mu] = v.adjoint() * tensor_beta_unprojected(n, mu) * v;

  rep->parity_ = v.adjoint() * kron_power(std::vector<CMatrix>(n, g.gamma[0])) * v;

  const Complex is = kI * s.value();
  for (int m = 0; m < 4; ++m)
    for (int k = 0; k < 4; ++k)
      rep->beta_tensor_[m][k] = is * (rep->beta_[m] * rep->beta_[k] - rep->beta_[k] * rep->beta_[m]);
  rep->beta_dual_ = dual(rep->beta_tensor_);
  return rep;
}

CMatrix RepMatrices::slash(const Vec4& p_upper) const {
  const Vec4 pl = Metric::minkowski().lower(p_upper);
  CMatrix out = CMatrix::Zero(dim(), dim());
  for (int mu = 0; mu < 4; ++mu) out += pl[mu] * beta_[mu];
  return out;
}

Eigen::VectorXcd RepMatrices::spectrum(const Vec4& p_upper) const {
  Eigen::ComplexEigenSolver<CMatrix> es(slash(p_upper), false);
  Eigen::VectorXcd ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), [](Complex a, Complex b) { return a.real() < b.real(); });
  return ev;
}

}  // namespace spinphase
