#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "spinphase/repspace.hpp"

namespace spinphase {

/// One point (x, p, xi) of the enlarged phase space. The spinor momentum is not
/// stored; it is always eta = i lambda xi-bar.
struct PhaseState {
  Vec4 x = Vec4::Zero();
  /// Upper-index momentum p^mu.
  Vec4 p = Vec4::Zero();
  CVector xi;
  double lambda = 1.0;
  SpinLabel spin = SpinLabel::from_twice(1);

  double p_squared() const { return Metric::minkowski().dot(p, p); }
  /// eta_a = i lambda (xi^dagger parity)_a
  CVector eta(const RepMatrices& rep) const;
  /// xi-bar xi
  double xi_norm(const RepMatrices& rep) const;
  bool is_finite() const;
};

/// Validates that the state's spinor dimension matches rep and p is timelike.
void require_physical(const PhaseState& state, const RepMatrices& rep);

/// Index layout of the complex canonical coordinates (x^mu, p_mu, xi_a, eta_a).
struct PhaseLayout {
  int dim = 4;

  int size() const noexcept { return 8 + 2 * dim; }
  static constexpr int x(int mu) noexcept { return mu; }
  static constexpr int p(int mu) noexcept { return 4 + mu; }
  int xi(int a) const noexcept { return 8 + a; }
  int eta(int a) const noexcept { return 8 + dim + a; }
};

/// Numerical coordinates of a phase-space point with xi and eta independent.
struct PhasePoint {
  PhaseLayout layout;
  CVector coords;

  Complex x(int mu) const { return coords[PhaseLayout::x(mu)]; }
  /// Lower-index canonical momentum p_mu.
  Complex p_lower(int mu) const { return coords[PhaseLayout::p(mu)]; }
  CVector xi() const { return coords.segment(8, layout.dim); }
  CVector eta() const { return coords.segment(8 + layout.dim, layout.dim); }
};

/// Maps a physical state to canonical coordinates, imposing eta = i lambda xi-bar.
PhasePoint to_point(const PhaseState& state, const RepMatrices& rep);

enum class SpinorNorm { None, Plus, Minus };

struct SamplerOptions {
  double min_mass = 0.5;
  double max_mass = 2.0;
  /// Spatial momentum is drawn with rapidity uniform in [0, max_rapidity].
  double max_rapidity = 1.0;
  bool rest_frame = false;
  /// Extra boost rapidity along x applied after sampling (covariance checks).
  double boost_rapidity = 0.0;
  SpinorNorm norm = SpinorNorm::None;
  double lambda = 1.0;
  /// Position components drawn uniformly in [-position_scale, position_scale].
  double position_scale = 1.0;
};

/// Seedable random generator of physical states.
class StateSampler {
public:
  StateSampler(RepPtr rep, std::uint64_t seed, SamplerOptions options = {});

  PhaseState sample();
  /// Random timelike momentum according to the options.
  Vec4 sample_momentum();
  /// Spinor with components drawn uniformly from the complex unit disk.
  CVector sample_spinor();
  double uniform(double lo, double hi);

  const SamplerOptions& options() const { return options_; }
  const RepPtr& rep() const { return rep_; }

private:
  RepPtr rep_;
  std::mt19937_64 rng_;
  SamplerOptions options_;
};

/// Pure boost along spatial axis `axis` (1..3) with the given rapidity, acting on upper-index vectors.
Tensor4 boost_matrix(int axis, double rapidity);

}  // namespace spinphase
