#pragma once

#include <functional>
#include <vector>

#include "spinphase/observables.hpp"
#include "spinphase/spectral.hpp"

namespace spinphase {

/// Proper-time derivatives of (x, p, xi).
struct StateDerivative {
  Vec4 dx = Vec4::Zero();
  /// d p^mu / d tau, upper index.
  Vec4 dp = Vec4::Zero();
  CVector dxi;
};

/// Free equations of motion: x' = xi-bar beta xi, p' = 0, xi' = -(i/lambda) beta.p xi.
StateDerivative eom(const RepMatrices& rep, const PhaseState& state);

/// Zitterbewegung angular frequency sqrt(p^2)/(lambda s).
double zbw_angular_frequency(double p_squared, double lambda, SpinLabel spin);
double zbw_angular_frequency(const PhaseState& state);
double zbw_period(const PhaseState& state);

/// exp(-(i/lambda) (beta.p) tau) for fixed p and lambda.
///
/// Uses the eigenbasis of beta.p when its condition number is below
/// kMaxEigenCondition, otherwise falls back to Pade scaling and squaring.
class SpinorPropagator {
public:
  SpinorPropagator(const RepMatrices& rep, const Vec4& p, double lambda);

  CMatrix matrix(double tau) const;
  CVector apply(const CVector& xi, double tau) const { return matrix(tau) * xi; }
  bool uses_eigenbasis() const noexcept { return use_eigen_; }
  double condition() const noexcept { return spectral_.condition; }

private:
  CMatrix generator_;  // -(i/lambda) beta.p
  Spectral spectral_;
  bool use_eigen_ = false;
};

/// Radius at proper time tau from the initial data alone:
/// r(tau) = r(0) cos(w tau) + r'(0)/w sin(w tau), r'(0) = d(p) u(0), w = sqrt(p^2)/(lambda s).
Vec4 closed_form_radius(const RepMatrices& rep, const PhaseState& state, double tau);

/// Exact free evolution: spinor by matrix exponential, x = X + f(tau) p + r(tau).
PhaseState propagate_exact(const RepMatrices& rep, const PhaseState& state, double tau);

enum class Method { ExactPropagator, Rk4 };

struct IntegratorConfig {
  Method method = Method::Rk4;
  double dt = 1e-3;
  double tau_end = 1.0;
  /// Emit one sample every `stride` steps (the final step is always emitted).
  int stride = 1;

  void validate() const;
};

struct TrajectorySample {
  double tau = 0.0;
  PhaseState state;
  Vec4 u = Vec4::Zero();
  Vec4 r = Vec4::Zero();
  Vec4 W = Vec4::Zero();
  Tensor4 S = Tensor4::Zero();
  double H = 0.0;
};

TrajectorySample make_sample(const RepMatrices& rep, const PhaseState& state, double tau);

using DerivativeFn = std::function<StateDerivative(const PhaseState&)>;
using SampleSink = std::function<void(const TrajectorySample&)>;

/// One classic fourth-order Runge-Kutta step.
PhaseState rk4_step(const PhaseState& state, double h, const DerivativeFn& f);

/// Streams samples to `sink`.
void integrate(const RepMatrices& rep, const PhaseState& state, const IntegratorConfig& cfg, const SampleSink& sink);
std::vector<TrajectorySample> integrate(const RepMatrices& rep, const PhaseState& state, const IntegratorConfig& cfg);

/// Split of a free trajectory into centre, longitudinal part and radius.
struct Decomposition {
  Vec4 X = Vec4::Zero();      ///< (1/p^2) J p from the first sample
  double f_slope = 0.0;       ///< H / p^2
  double f_offset = 0.0;      ///< f at the first sample
  std::vector<double> tau;
  std::vector<Vec4> r;        ///< x - X - f p
  /// max |X + f p + r_spinor - x| over samples, r_spinor from the sample's spinor
  double residual = 0.0;
  /// max deviation of (1/p^2) J p from X across samples
  double center_drift = 0.0;
};

Decomposition decompose(const RepMatrices& rep, const std::vector<TrajectorySample>& samples);

}  // namespace spinphase

namespace spinphase {

/// Angular frequency of an oscillating signal from its zero crossings (linear
/// interpolation between samples). Returns NaN when fewer than two crossings exist.
double zero_crossing_frequency(const std::vector<double>& tau, const std::vector<double>& signal);

/// Zero-crossing frequency of the radius component with the largest excursion,
/// after removing its time average.
double measured_zbw_frequency(const std::vector<TrajectorySample>& samples);

}  // namespace spinphase
