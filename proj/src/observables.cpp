#include "spinphase/observables.hpp"

#include <algorithm>

namespace spinphase {

namespace {

// sum_n M^{mn} p_n as a single matrix expression is p-dependent; build it on jets.
Jet contract_with_p(const JetCoords& c, const std::array<CMatrix, 4>& row) {
  Jet acc = c.constant(0.0);
  for (int n = 0; n < 4; ++n) acc += c.bilinear(row[n]) * c.p_lower(n);
  return acc;
}

}  // namespace

Observable hamiltonian(const RepPtr& rep, double lambda) {
  if (lambda == 0.0) throw Error(ErrorKind::ZeroLambda, "lambda must be nonzero");
  const Complex pre = -kI / lambda;
  return Observable::from_expr("H", [rep, pre](const JetCoords& c) {
    Jet acc = c.constant(0.0);
    for (int mu = 0; mu < 4; ++mu) acc += c.bilinear(rep->beta()[mu]) * c.p_lower(mu);
    return acc * pre;
  });
}

ObservableVec lower(const ObservableVec& v) {
  ObservableVec out;
  for (int mu = 0; mu < 4; ++mu) {
    const double g = Metric::minkowski().g(mu, mu);
    const Observable comp = v[mu];
    out[mu] = Observable(comp.label() + "_low", [comp, g](const PhasePoint& pt, int o) { return comp.jet(pt, o) * g; },
                         comp.max_order());
  }
  return out;
}

ObservableSuite observables_suite(const RepPtr& rep, double lambda) {
  if (lambda == 0.0) throw Error(ErrorKind::ZeroLambda, "lambda must be nonzero");
  const double s = rep->spin().value();
  const Complex to_bar = -kI / lambda;  // xi-bar = (-i/lambda) eta
  ObservableSuite suite;

  for (int m = 0; m < 4; ++m) {
    const std::string idx = std::to_string(m);
    suite.u[m] = Observable::from_expr("u^" + idx, [rep, m, to_bar](const JetCoords& c) {
      return c.bilinear(rep->beta()[m]) * to_bar;
    });
    // W^m = lambda s xi-bar beta*^{mn} xi p_n = -i s eta beta*^{mn} xi p_n
    suite.W[m] = Observable::from_expr("W^" + idx, [rep, m, s](const JetCoords& c) {
      return contract_with_p(c, rep->beta_dual()[m]) * (-kI * s);
    });
    // r^m = (lambda s / p^2) xi-bar beta^{mn} xi p_n = (-i s / p^2) eta beta^{mn} xi p_n
    suite.r[m] = Observable::from_expr("r^" + idx, [rep, m, s](const JetCoords& c) {
      return contract_with_p(c, rep->beta_tensor()[m]) * inverse(c.p_squared()) * (-kI * s);
    });
    for (int n = 0; n < 4; ++n) {
      const std::string idx2 = idx + std::to_string(n);
      // S^{mn} = -lambda s xi-bar beta^{mn} xi = i s eta beta^{mn} xi
      suite.S[m][n] = Observable::from_expr("S^" + idx2, [rep, m, n, s](const JetCoords& c) {
        return c.bilinear(rep->beta_tensor()[m][n]) * (kI * s);
      });
      suite.L[m][n] = Observable::from_expr("L^" + idx2, [m, n](const JetCoords& c) {
        return c.x(m) * c.p_upper(n) - c.x(n) * c.p_upper(m);
      });
      suite.J[m][n] = Observable::from_expr("J^" + idx2, [rep, m, n, s](const JetCoords& c) {
        return c.x(m) * c.p_upper(n) - c.x(n) * c.p_upper(m) + c.bilinear(rep->beta_tensor()[m][n]) * (kI * s);
      });
    }
  }

  suite.H = hamiltonian(rep, lambda);
  const Observable H = suite.H;
  suite.f_slope = Observable::from_expr("f_slope", [H](const JetCoords& c) {
    return H.jet(c.point(), c.order()) * inverse(c.p_squared());
  });

  for (int m = 0; m < 4; ++m) {
    const ObservableTensor J = suite.J;
    suite.X[m] = Observable::from_expr("X^" + std::to_string(m), [J, m](const JetCoords& c) {
      Jet acc = c.constant(0.0);
      for (int n = 0; n < 4; ++n) acc += J[m][n].jet(c.point(), c.order()) * c.p_lower(n);
      return acc * inverse(c.p_squared());
    });
    suite.z[m] = coordinate_x(m) - suite.r[m];
  }
  return suite;
}

DirectObservables evaluate_direct(const RepMatrices& rep, const PhaseState& state) {
  return evaluate_direct(rep, state, state.p);
}

DirectObservables evaluate_direct(const RepMatrices& rep, const PhaseState& state, const Vec4& momentum) {
  if (state.xi.size() != rep.dim()) throw Error(ErrorKind::InvalidArgument, "spinor dimension mismatch");
  const Metric& g = Metric::minkowski();
  const double s = rep.spin().value();
  const double lam = state.lambda;
  const Eigen::RowVectorXcd xbar = rep.bar(state.xi);
  const Vec4 pl = g.lower(momentum);
  const double p2 = g.dot(momentum, momentum);

  DirectObservables d;
  double imag = 0.0;
  auto take = [&imag](Complex z) {
    imag = std::max(imag, std::abs(z.imag()));
    return z.real();
  };

  CTensor4 bt, bd;
  for (int m = 0; m < 4; ++m) {
    d.u[m] = take((xbar * rep.beta()[m] * state.xi)(0, 0));
    for (int n = 0; n < 4; ++n) {
      bt(m, n) = (xbar * rep.beta_tensor()[m][n] * state.xi)(0, 0);
      bd(m, n) = (xbar * rep.beta_dual()[m][n] * state.xi)(0, 0);
    }
  }
  for (int m = 0; m < 4; ++m) {
    Complex rr = 0.0, ww = 0.0;
    for (int n = 0; n < 4; ++n) {
      rr += bt(m, n) * pl[n];
      ww += bd(m, n) * pl[n];
      d.S(m, n) = take(-lam * s * bt(m, n));
    }
    d.r[m] = take(lam * s / p2 * rr);
    d.W[m] = take(lam * s * ww);
  }
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) d.L(m, n) = state.x[m] * state.p[n] - state.x[n] * state.p[m];
  d.J = d.L + d.S;
  const Vec4 pcl = g.lower(state.p);
  const double pc2 = state.p_squared();
  d.X = d.J * pcl / pc2;

  d.H = take((xbar * rep.slash(momentum) * state.xi)(0, 0));
  d.f_slope = d.H / p2;
  d.xi_norm = take((xbar * state.xi)(0, 0));
  d.max_imag = imag;
  return d;
}

}  // namespace spinphase
