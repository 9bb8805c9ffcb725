#include "spinphase/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinphase {

namespace {

void require_lambda(double lambda) {
  if (lambda == 0.0) throw Error(ErrorKind::ZeroLambda, "lambda must be nonzero");
}

PhaseState advanced(const PhaseState& s, const StateDerivative& d, double h) {
  PhaseState out = s;
  out.x += h * d.dx;
  out.p += h * d.dp;
  out.xi += h * d.dxi;
  return out;
}

struct RadiusData {
  Vec4 r0;
  Vec4 rdot0;
  double omega;
};

RadiusData radius_data(const RepMatrices& rep, const PhaseState& state) {
  const DirectObservables d = evaluate_direct(rep, state);
  const double p2 = state.p_squared();
  const Vec4& p = state.p;
  RadiusData rd;
  rd.r0 = d.r;
  rd.rdot0 = d.u - (Metric::minkowski().dot(d.u, p) / p2) * p;
  rd.omega = zbw_angular_frequency(state);
  return rd;
}

Vec4 radius_at(const RadiusData& rd, double tau) {
  return rd.r0 * std::cos(rd.omega * tau) + rd.rdot0 * (std::sin(rd.omega * tau) / rd.omega);
}

}  // namespace

StateDerivative eom(const RepMatrices& rep, const PhaseState& state) {
  require_lambda(state.lambda);
  StateDerivative d;
  const Eigen::RowVectorXcd xbar = rep.bar(state.xi);
  for (int mu = 0; mu < 4; ++mu) d.dx[mu] = (xbar * rep.beta()[mu] * state.xi)(0, 0).real();
  d.dxi = (-kI / state.lambda) * (rep.slash(state.p) * state.xi);
  return d;
}

double zbw_angular_frequency(double p_squared, double lambda, SpinLabel spin) {
  require_lambda(lambda);
  return std::sqrt(p_squared) / (std::abs(lambda) * spin.value());
}

double zbw_angular_frequency(const PhaseState& state) {
  return zbw_angular_frequency(state.p_squared(), state.lambda, state.spin);
}

double zbw_period(const PhaseState& state) { return 2.0 * M_PI / zbw_angular_frequency(state); }

SpinorPropagator::SpinorPropagator(const RepMatrices& rep, const Vec4& p, double lambda) {
  require_lambda(lambda);
  generator_ = (-kI / lambda) * rep.slash(p);
  spectral_ = spectral_decomposition(generator_);
  use_eigen_ = spectral_.condition < kMaxEigenCondition;
}

CMatrix SpinorPropagator::matrix(double tau) const {
  if (tau == 0.0) return CMatrix::Identity(generator_.rows(), generator_.cols());
  if (use_eigen_) {
    const Eigen::VectorXcd phases = (spectral_.values * tau).array().exp();
    return spectral_.vectors * phases.asDiagonal() * spectral_.inverse;
  }
  return expm_pade(generator_ * tau);
}

Vec4 closed_form_radius(const RepMatrices& rep, const PhaseState& state, double tau) {
  if (!(state.p_squared() > 0.0)) throw Error(ErrorKind::InvalidArgument, "closed_form_radius needs p^2 > 0");
  return radius_at(radius_data(rep, state), tau);
}

PhaseState propagate_exact(const RepMatrices& rep, const PhaseState& state, double tau) {
  require_lambda(state.lambda);
  require_physical(state, rep);
  if (tau == 0.0) return state;
  const RadiusData rd = radius_data(rep, state);
  const double f_slope = evaluate_direct(rep, state).f_slope;
  PhaseState out = state;
  out.xi = SpinorPropagator(rep, state.p, state.lambda).apply(state.xi, tau);
  out.x = state.x - rd.r0 + (f_slope * tau) * state.p + radius_at(rd, tau);
  return out;
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::ConfigError, "dt must be positive");
  if (!(tau_end >= 0.0) || !std::isfinite(tau_end)) throw Error(ErrorKind::ConfigError, "tau_end must be >= 0");
  if (stride < 1) throw Error(ErrorKind::ConfigError, "stride must be >= 1");
}

TrajectorySample make_sample(const RepMatrices& rep, const PhaseState& state, double tau) {
  const DirectObservables d = evaluate_direct(rep, state);
  TrajectorySample s;
  s.tau = tau;
  s.state = state;
  s.u = d.u;
  s.r = d.r;
  s.W = d.W;
  s.S = d.S;
  s.H = d.H;
  return s;
}

PhaseState rk4_step(const PhaseState& state, double h, const DerivativeFn& f) {
  const StateDerivative k1 = f(state);
  const StateDerivative k2 = f(advanced(state, k1, 0.5 * h));
  const StateDerivative k3 = f(advanced(state, k2, 0.5 * h));
  const StateDerivative k4 = f(advanced(state, k3, h));
  PhaseState out = state;
  out.x += (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  out.p += (h / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
  out.xi += (h / 6.0) * (k1.dxi + 2.0 * k2.dxi + 2.0 * k3.dxi + k4.dxi);
  return out;
}

void integrate(const RepMatrices& rep, const PhaseState& state, const IntegratorConfig& cfg, const SampleSink& sink) {
  cfg.validate();
  require_lambda(state.lambda);
  require_physical(state, rep);

  const long steps = static_cast<long>(std::ceil(cfg.tau_end / cfg.dt - 1e-9));

  if (cfg.method == Method::ExactPropagator) {
    const SpinorPropagator prop(rep, state.p, state.lambda);
    const RadiusData rd = radius_data(rep, state);
    const double f_slope = evaluate_direct(rep, state).f_slope;
    for (long k = 0; k <= steps; ++k) {
      if (k % cfg.stride != 0 && k != steps) continue;
      const double tau = std::min(static_cast<double>(k) * cfg.dt, cfg.tau_end);
      PhaseState s = state;
      s.xi = prop.apply(state.xi, tau);
      s.x = state.x - rd.r0 + (f_slope * tau) * state.p + radius_at(rd, tau);
      sink(make_sample(rep, s, tau));
    }
    return;
  }

  const DerivativeFn f = [&rep](const PhaseState& s) { return eom(rep, s); };
  PhaseState s = state;
  sink(make_sample(rep, s, 0.0));
  for (long k = 1; k <= steps; ++k) {
    const double tau_prev = static_cast<double>(k - 1) * cfg.dt;
    const double h = std::min(cfg.dt, cfg.tau_end - tau_prev);
    s = rk4_step(s, h, f);
    if (!s.is_finite()) throw Error(ErrorKind::StepUnstable, "non-finite state at step " + std::to_string(k));
    if (k % cfg.stride == 0 || k == steps) sink(make_sample(rep, s, std::min(static_cast<double>(k) * cfg.dt, cfg.tau_end)));
  }
}

std::vector<TrajectorySample> integrate(const RepMatrices& rep, const PhaseState& state, const IntegratorConfig& cfg) {
  std::vector<TrajectorySample> out;
  integrate(rep, state, cfg, [&out](const TrajectorySample& s) { out.push_back(s); });
  return out;
}

Decomposition decompose(const RepMatrices& rep, const std::vector<TrajectorySample>& samples) {
  if (samples.size() < 2) throw Error(ErrorKind::InvalidArgument, "decompose needs at least two samples");
  const Metric& g = Metric::minkowski();
  const Vec4 p = samples.front().state.p;
  const double p2 = g.dot(p, p);
  const Vec4 pl = g.lower(p);
  for (const auto& s : samples)
    if ((s.state.p - p).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, p.cwiseAbs().maxCoeff()))
      throw Error(ErrorKind::InconsistentMomentum, "momentum varies across samples");

  auto center = [&](const TrajectorySample& s) {
    const DirectObservables d = evaluate_direct(rep, s.state);
    return Vec4(d.J * pl / p2);
  };

  Decomposition dec;
  const TrajectorySample& first = samples.front();
  dec.X = center(first);
  dec.f_slope = first.H / p2;
  dec.f_offset = g.dot(first.state.x, p) / p2;
  const double scale = std::max(1.0, first.state.x.cwiseAbs().maxCoeff());

  for (const auto& s : samples) {
    const double f = dec.f_offset + dec.f_slope * (s.tau - first.tau);
    const Vec4 r = s.state.x - dec.X - f * p;
    dec.tau.push_back(s.tau);
    dec.r.push_back(r);
    const Vec4 rebuilt = dec.X + f * p + s.r;
    dec.residual = std::max(dec.residual, (rebuilt - s.state.x).cwiseAbs().maxCoeff() / scale);
    dec.center_drift = std::max(dec.center_drift, (center(s) - dec.X).cwiseAbs().maxCoeff());
  }
  return dec;
}

}  // namespace spinphase

namespace spinphase {

double zero_crossing_frequency(const std::vector<double>& tau, const std::vector<double>& signal) {
  if (tau.size() != signal.size()) throw Error(ErrorKind::InvalidArgument, "tau and signal sizes differ");
  std::vector<double> crossings;
  for (std::size_t i = 1; i < signal.size(); ++i) {
    const double a = signal[i - 1];
    const double b = signal[i];
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      if (b == 0.0 && i + 1 < signal.size()) continue;  // counted on the next interval
      crossings.push_back(tau[i - 1] + (tau[i] - tau[i - 1]) * a / (a - b));
    }
  }
  if (crossings.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double half_periods = static_cast<double>(crossings.size() - 1);
  return M_PI * half_periods / (crossings.back() - crossings.front());
}

double measured_zbw_frequency(const std::vector<TrajectorySample>& samples) {
  if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
  int best = 0;
  double best_amp = -1.0;
  for (int mu = 0; mu < 4; ++mu) {
    double amp = 0.0;
    for (const auto& s : samples) amp = std::max(amp, std::abs(s.r[mu]));
    if (amp > best_amp) {
      best_amp = amp;
      best = mu;
    }
  }
  std::vector<double> tau, sig;
  for (const auto& s : samples) {
    tau.push_back(s.tau);
    sig.push_back(s.r[best]);
  }
  // trapezoid mean, zero for a free orbit sampled over whole periods
  if (sig.size() > 1 && tau.back() > tau.front()) {
    double area = 0.0;
    for (std::size_t k = 1; k < sig.size(); ++k) area += 0.5 * (sig[k] + sig[k - 1]) * (tau[k] - tau[k - 1]);
    const double mean = area / (tau.back() - tau.front());
    for (double& v : sig) v -= mean;
  }
  return zero_crossing_frequency(tau, sig);
}

}  // namespace spinphase
