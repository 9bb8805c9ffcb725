#include "spinphase/observable.hpp"

#include <algorithm>

namespace spinphase {

namespace {

// Omega * v for the canonical pairing (x^mu, p_mu), (xi_a, eta_a).
CVector apply_symplectic(const CVector& v, const PhaseLayout& layout) {
  CVector out(v.size());
  for (int mu = 0; mu < 4; ++mu) {
    out[PhaseLayout::x(mu)] = v[PhaseLayout::p(mu)];
    out[PhaseLayout::p(mu)] = -v[PhaseLayout::x(mu)];
  }
  for (int a = 0; a < layout.dim; ++a) {
    out[layout.xi(a)] = v[layout.eta(a)];
    out[layout.eta(a)] = -v[layout.xi(a)];
  }
  return out;
}

}  // namespace

Jet JetCoords::bilinear(const CMatrix& m) const {
  const int d = point_.layout.dim;
  const CVector xi = point_.xi();
  const CVector eta = point_.eta();
  const CVector m_xi = m * xi;
  Jet j = Jet::constant((eta.transpose() * m_xi)(0, 0), size(), order_);
  if (order_ >= 1) {
    j.grad_mut().segment(8, d) = (eta.transpose() * m).transpose();
    j.grad_mut().segment(8 + d, d) = m_xi;
  }
  if (order_ >= 2) {
    j.hess_mut().block(8 + d, 8, d, d) = m;
    j.hess_mut().block(8, 8 + d, d, d) = m.transpose();
  }
  return j;
}

Jet JetCoords::p_squared() const {
  Jet acc = constant(0.0);
  for (int mu = 0; mu < 4; ++mu) {
    const Jet pm = p_lower(mu);
    acc += pm * pm * Metric::minkowski().g(mu, mu);
  }
  return acc;
}

Observable Observable::from_expr(std::string label, Expr expr) {
  return Observable(std::move(label), [expr = std::move(expr)](const PhasePoint& pt, int order) {
    return expr(JetCoords(pt, order));
  });
}

Observable Observable::constant(std::string label, Complex v) {
  return Observable(std::move(label),
                    [v](const PhasePoint& pt, int order) { return Jet::constant(v, pt.layout.size(), order); });
}

Jet Observable::jet(const PhasePoint& pt, int order) const {
  if (order > max_order_)
    throw Error(ErrorKind::InvalidArgument, "observable '" + label_ + "' supplies derivatives up to order " +
                                                std::to_string(max_order_));
  return fn_(pt, order);
}

Observable operator+(const Observable& a, const Observable& b) {
  return Observable("(" + a.label() + " + " + b.label() + ")",
                    [a, b](const PhasePoint& pt, int o) { return a.jet(pt, o) + b.jet(pt, o); },
                    std::min(a.max_order(), b.max_order()));
}

Observable operator-(const Observable& a, const Observable& b) {
  return Observable("(" + a.label() + " - " + b.label() + ")",
                    [a, b](const PhasePoint& pt, int o) { return a.jet(pt, o) - b.jet(pt, o); },
                    std::min(a.max_order(), b.max_order()));
}

Observable operator*(const Observable& a, const Observable& b) {
  return Observable(a.label() + "*" + b.label(),
                    [a, b](const PhasePoint& pt, int o) { return a.jet(pt, o) * b.jet(pt, o); },
                    std::min(a.max_order(), b.max_order()));
}

Observable operator*(Complex s, const Observable& a) {
  return Observable("c*" + a.label(), [a, s](const PhasePoint& pt, int o) { return a.jet(pt, o) * s; },
                    a.max_order());
}

Complex bracket_value(const Jet& a, const Jet& b, const PhaseLayout& layout) {
  return a.grad().transpose() * apply_symplectic(b.grad(), layout);
}

Observable bracket(const Observable& a, const Observable& b) {
  const int max_order = std::min(a.max_order(), b.max_order()) - 1;
  if (max_order < 0) throw Error(ErrorKind::InvalidArgument, "bracket operands must be differentiable");
  return Observable(
      "{" + a.label() + ", " + b.label() + "}",
      [a, b](const PhasePoint& pt, int order) {
        const Jet ja = a.jet(pt, order + 1);
        const Jet jb = b.jet(pt, order + 1);
        const CVector omega_gb = apply_symplectic(jb.grad(), pt.layout);
        Jet out = Jet::constant((ja.grad().transpose() * omega_gb)(0, 0), pt.layout.size(), order);
        if (order >= 1) {
          // d/dz (gA^T Omega gB) = H_A Omega gB - H_B Omega gA
          out.grad_mut() = ja.hess() * omega_gb - jb.hess() * apply_symplectic(ja.grad(), pt.layout);
        }
        return out;
      },
      max_order);
}

CVec4 evaluate(const ObservableVec& v, const PhasePoint& pt) {
  CVec4 out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = v[mu].value(pt);
  return out;
}

CTensor4 evaluate(const ObservableTensor& t, const PhasePoint& pt) {
  CTensor4 out;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) out(m, n) = t[m][n].value(pt);
  return out;
}

Observable coordinate_x(int mu) {
  return Observable::from_expr("x^" + std::to_string(mu), [mu](const JetCoords& c) { return c.x(mu); });
}

Observable momentum_lower(int mu) {
  return Observable::from_expr("p_" + std::to_string(mu), [mu](const JetCoords& c) { return c.p_lower(mu); });
}

}  // namespace spinphase
