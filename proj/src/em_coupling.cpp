#include "spinphase/em_coupling.hpp"

#include <algorithm>
#include <cmath>

namespace spinphase {

FieldConfig FieldConfig::none() { return FieldConfig{}; }

FieldConfig FieldConfig::uniform(const Tensor4& f_lower, double charge) {
  FieldConfig f;
  f.kind = FieldKind::Uniform;
  f.F = f_lower;
  f.charge = charge;
  f.validate();
  return f;
}

FieldConfig FieldConfig::plane_wave(const Vec4& amplitude_lower, const Vec4& wave_vector_lower, double charge) {
  FieldConfig f;
  f.kind = FieldKind::PlaneWave;
  f.amplitude = amplitude_lower;
  f.wave_vector = wave_vector_lower;
  f.charge = charge;
  f.validate();
  return f;
}

void FieldConfig::validate() const {
  const Metric& g = Metric::minkowski();
  if (!std::isfinite(charge)) throw Error(ErrorKind::InvalidArgument, "charge must be finite");
  switch (kind) {
    case FieldKind::None: break;
    case FieldKind::Uniform:
      if ((F + F.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, F.cwiseAbs().maxCoeff()))
        throw Error(ErrorKind::InvalidArgument, "uniform field tensor must be antisymmetric");
      break;
    case FieldKind::PlaneWave: {
      const double scale = std::max(1e-300, wave_vector.squaredNorm());
      if (std::abs(g.dot(wave_vector, wave_vector)) > 1e-12 * scale)
        throw Error(ErrorKind::InvalidArgument, "plane-wave vector must be null (k^2 = 0)");
      const double ka_scale = std::max(1e-300, wave_vector.norm() * amplitude.norm());
      if (std::abs(g.dot(wave_vector, amplitude)) > 1e-12 * ka_scale)
        throw Error(ErrorKind::InvalidArgument, "plane-wave amplitude must be transverse (k.a = 0)");
      break;
    }
  }
}

Vec4 FieldConfig::potential(const Vec4& x) const {
  switch (kind) {
    case FieldKind::None: return gauge_offset;
    case FieldKind::Uniform: return Vec4(-0.5 * F * x + gauge_offset);
    case FieldKind::PlaneWave: return Vec4(amplitude * std::cos(wave_vector.dot(x)) + gauge_offset);
  }
  return Vec4::Zero();
}

Tensor4 FieldConfig::potential_gradient(const Vec4& x) const {
  switch (kind) {
    case FieldKind::None: return Tensor4::Zero();
    case FieldKind::Uniform: return 0.5 * F;  // d_m (-1/2 F_{nr} x^r) = -1/2 F_{nm}
    case FieldKind::PlaneWave: return -std::sin(wave_vector.dot(x)) * wave_vector * amplitude.transpose();
  }
  return Tensor4::Zero();
}

Tensor4 FieldConfig::field_strength(const Vec4& x) const {
  const Tensor4 gr = potential_gradient(x);
  return gr - gr.transpose();
}

Jet FieldConfig::potential_jet(const JetCoords& c, int n) const {
  Jet a = c.constant(gauge_offset[n]);
  switch (kind) {
    case FieldKind::None: break;
    case FieldKind::Uniform:
      for (int r = 0; r < 4; ++r)
        if (F(n, r) != 0.0) a += c.x(r) * (-0.5 * F(n, r));
      break;
    case FieldKind::PlaneWave: {
      Jet phase = c.constant(0.0);
      for (int r = 0; r < 4; ++r) phase += c.x(r) * wave_vector[r];
      a += cos(phase) * amplitude[n];
      break;
    }
  }
  return a;
}

Vec4 kinetic_momentum(const PhaseState& state, const FieldConfig& field) {
  const Metric& g = Metric::minkowski();
  const Vec4 pi_lower = g.lower(state.p) - field.charge * field.potential(state.x);
  return g.lower(pi_lower);
}

StateDerivative eom_em(const RepMatrices& rep, const PhaseState& state, const FieldConfig& field) {
  if (state.lambda == 0.0) throw Error(ErrorKind::ZeroLambda, "lambda must be nonzero");
  const Metric& g = Metric::minkowski();
  StateDerivative d;
  const Eigen::RowVectorXcd xbar = rep.bar(state.xi);
  for (int mu = 0; mu < 4; ++mu) d.dx[mu] = (xbar * rep.beta()[mu] * state.xi)(0, 0).real();
  if (field.kind != FieldKind::None && field.charge != 0.0) {
    const Vec4 dp_lower = field.charge * field.potential_gradient(state.x) * d.dx;
    d.dp = g.lower(dp_lower);
  }
  d.dxi = (-kI / state.lambda) * (rep.slash(kinetic_momentum(state, field)) * state.xi);
  return d;
}

Observable hamiltonian_em(const RepPtr& rep, double lambda, const FieldConfig& field) {
  if (lambda == 0.0) throw Error(ErrorKind::ZeroLambda, "lambda must be nonzero");
  const Complex pre = -kI / lambda;
  return Observable::from_expr("H_em", [rep, pre, field](const JetCoords& c) {
    Jet acc = c.constant(0.0);
    for (int mu = 0; mu < 4; ++mu)
      acc += c.bilinear(rep->beta()[mu]) * (c.p_lower(mu) - field.potential_jet(c, mu) * field.charge);
    return acc * pre;
  });
}

double zbw_envelope(const RepMatrices& rep, const PhaseState& state, const Vec4& q) {
  const Metric& g = Metric::minkowski();
  const DirectObservables d = evaluate_direct(rep, state, q);
  const double q2 = g.dot(q, q);
  const double omega = zbw_angular_frequency(q2, state.lambda, state.spin);
  const Vec4 a = d.r;
  const Vec4 b = (d.u - (g.dot(d.u, q) / q2) * q) / omega;
  const double aa = -g.dot(a, a);
  const double bb = -g.dot(b, b);
  const double ab = -g.dot(a, b);
  const double half = 0.5 * (aa - bb);
  return std::sqrt(std::max(0.0, 0.5 * (aa + bb) + std::sqrt(half * half + ab * ab)));
}

InteractionResult integrate_em(const RepMatrices& rep, const PhaseState& state, const FieldConfig& field,
                               const IntegratorConfig& cfg, MomentumChoice momentum) {
  cfg.validate();
  field.validate();
  if (state.lambda == 0.0) throw Error(ErrorKind::ZeroLambda, "lambda must be nonzero");
  require_physical(state, rep);

  InteractionResult result;
  result.report.momentum = momentum;
  const Metric& g = Metric::minkowski();

  auto record = [&](const PhaseState& s, double tau) {
    if (!s.is_finite()) throw Error(ErrorKind::StepUnstable, "non-finite state at tau = " + std::to_string(tau));
    const Vec4 pi = kinetic_momentum(s, field);
    const Vec4 q = momentum == MomentumChoice::Kinetic ? pi : s.p;
    if (!(g.dot(q, q) > 0.0))
      throw Error(ErrorKind::StepUnstable, "momentum left the timelike cone at tau = " + std::to_string(tau));

    const DirectObservables d = evaluate_direct(rep, s, q);
    TrajectorySample sample;
    sample.tau = tau;
    sample.state = s;
    sample.u = d.u;
    sample.r = d.r;
    sample.W = d.W;
    sample.S = d.S;
    sample.H = d.H;

    InteractionPoint pt;
    pt.tau = tau;
    pt.radius = std::sqrt(std::max(0.0, -g.dot(d.r, d.r)));
    pt.envelope = zbw_envelope(rep, s, q);
    pt.purity = eigen_split(rep, s.xi, q).purity;
    pt.kinetic = pi;
    pt.canonical = s.p;
    result.samples.push_back(std::move(sample));
    result.report.series.push_back(pt);
  };

  const DerivativeFn f = [&rep, &field](const PhaseState& s) { return eom_em(rep, s, field); };
  const long steps = static_cast<long>(std::ceil(cfg.tau_end / cfg.dt - 1e-9));
  PhaseState s = state;
  record(s, 0.0);
  for (long k = 1; k <= steps; ++k) {
    const double tau_prev = static_cast<double>(k - 1) * cfg.dt;
    const double h = std::min(cfg.dt, cfg.tau_end - tau_prev);
    s = rk4_step(s, h, f);
    if (!s.is_finite()) throw Error(ErrorKind::StepUnstable, "non-finite state at step " + std::to_string(k));
    if (k % cfg.stride == 0 || k == steps) record(s, std::min(static_cast<double>(k) * cfg.dt, cfg.tau_end));
  }
  return result;
}

}  // namespace spinphase
