#pragma once

#include <vector>

#include "spinphase/dynamics.hpp"
#include "spinphase/radiation.hpp"

namespace spinphase {

enum class FieldKind { None, Uniform, PlaneWave };

/// External potential A_mu(x) (lower index) with analytic gradient.
///
/// Uniform:    A_n(x) = -1/2 F_{nr} x^r + c_n
/// PlaneWave:  A_n(x) = a_n cos(k.x) + c_n, with k^2 = 0 and k.a = 0
///
/// c is a constant gauge offset, i.e. the gradient of chi(x) = c.x.
struct FieldConfig {
  FieldKind kind = FieldKind::None;
  double charge = 0.0;
  Tensor4 F = Tensor4::Zero();          ///< F_{mn}, lower indices
  Vec4 amplitude = Vec4::Zero();        ///< a_n, lower index
  Vec4 wave_vector = Vec4::Zero();      ///< k_n, lower index
  Vec4 gauge_offset = Vec4::Zero();     ///< c_n, lower index

  static FieldConfig none();
  static FieldConfig uniform(const Tensor4& f_lower, double charge);
  static FieldConfig plane_wave(const Vec4& amplitude_lower, const Vec4& wave_vector_lower, double charge);

  /// Throws InvalidArgument on a non-antisymmetric F, non-null k or k.a != 0.
  void validate() const;

  Vec4 potential(const Vec4& x) const;
  /// G(m, n) = d_m A_n at x.
  Tensor4 potential_gradient(const Vec4& x) const;
  /// F_{mn} = d_m A_n - d_n A_m at x.
  Tensor4 field_strength(const Vec4& x) const;
  /// A_n on coordinate jets.
  Jet potential_jet(const JetCoords& c, int n) const;
};

/// Upper-index kinetic momentum pi = p - e A(x).
Vec4 kinetic_momentum(const PhaseState& state, const FieldConfig& field);

/// Minimally coupled equations of motion, canonical-momentum form:
/// x'^m = xi-bar beta^m xi, p'_m = e (d_m A_n) x'^n, xi' = -(i/lambda) beta.(p - eA) xi.
StateDerivative eom_em(const RepMatrices& rep, const PhaseState& state, const FieldConfig& field);

/// H_em = xi-bar beta.(p - eA(x)) xi as a differentiable observable.
Observable hamiltonian_em(const RepPtr& rep, double lambda, const FieldConfig& field);

enum class MomentumChoice { Kinetic, Canonical };

struct InteractionPoint {
  double tau = 0.0;
  double radius = 0.0;     ///< sqrt(-r.r)
  double envelope = 0.0;   ///< semi-major axis of the osculating zitterbewegung ellipse
  double purity = 1.0;
  Vec4 kinetic = Vec4::Zero();
  Vec4 canonical = Vec4::Zero();
};

struct InteractionReport {
  MomentumChoice momentum = MomentumChoice::Kinetic;
  std::vector<InteractionPoint> series;
};

struct InteractionResult {
  InteractionReport report;
  std::vector<TrajectorySample> samples;  ///< observables built with the chosen momentum
};

/// Semi-major axis of the ellipse spanned by r and r'/w, where r' = d(q) u and
/// w = sqrt(q^2)/(lambda s); q is the momentum used for the spin observables.
double zbw_envelope(const RepMatrices& rep, const PhaseState& state, const Vec4& q);

/// RK4 integration of eom_em; StepUnstable on non-finite values.
InteractionResult integrate_em(const RepMatrices& rep, const PhaseState& state, const FieldConfig& field,
                               const IntegratorConfig& cfg, MomentumChoice momentum = MomentumChoice::Kinetic);

}  // namespace spinphase
