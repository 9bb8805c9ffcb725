#include "spinphase/phase_state.hpp"

#include <cmath>

namespace spinphase {

CVector PhaseState::eta(const RepMatrices& rep) const {
  return (kI * lambda) * rep.bar(xi).transpose();
}

double PhaseState::xi_norm(const RepMatrices& rep) const { return rep.bilinear(xi, CMatrix::Identity(rep.dim(), rep.dim())).real(); }

bool PhaseState::is_finite() const {
  return x.allFinite() && p.allFinite() && xi.allFinite() && std::isfinite(lambda);
}

void require_physical(const PhaseState& state, const RepMatrices& rep) {
  if (state.xi.size() != rep.dim())
    throw Error(ErrorKind::InvalidArgument, "spinor dimension " + std::to_string(state.xi.size()) +
                                                " does not match representation dimension " +
                                                std::to_string(rep.dim()));
  if (!(state.p_squared() > 0.0)) throw Error(ErrorKind::InvalidArgument, "momentum must be timelike (p^2 > 0)");
}

PhasePoint to_point(const PhaseState& state, const RepMatrices& rep) {
  PhasePoint pt;
  pt.layout.dim = rep.dim();
  pt.coords = CVector::Zero(pt.layout.size());
  const Vec4 pl = Metric::minkowski().lower(state.p);
  for (int mu = 0; mu < 4; ++mu) {
    pt.coords[PhaseLayout::x(mu)] = state.x[mu];
    pt.coords[PhaseLayout::p(mu)] = pl[mu];
  }
  pt.coords.segment(8, rep.dim()) = state.xi;
  pt.coords.segment(8 + rep.dim(), rep.dim()) = state.eta(rep);
  return pt;
}

Tensor4 boost_matrix(int axis, double rapidity) {
  Tensor4 b = Tensor4::Identity();
  const double ch = std::cosh(rapidity);
  const double sh = std::sinh(rapidity);
  b(0, 0) = ch;
  b(axis, axis) = ch;
  b(0, axis) = sh;
  b(axis, 0) = sh;
  return b;
}

StateSampler::StateSampler(RepPtr rep, std::uint64_t seed, SamplerOptions options)
    : rep_(std::move(rep)), rng_(seed), options_(options) {}

double StateSampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Vec4 StateSampler::sample_momentum() {
  const double m = uniform(options_.min_mass, options_.max_mass);
  Vec4 p(m, 0.0, 0.0, 0.0);
  if (!options_.rest_frame) {
    const double rapidity = uniform(0.0, options_.max_rapidity);
    const double cos_t = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * M_PI);
    const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
    const double pm = m * std::sinh(rapidity);
    p = Vec4(m * std::cosh(rapidity), pm * sin_t * std::cos(phi), pm * sin_t * std::sin(phi), pm * cos_t);
  }
  if (options_.boost_rapidity != 0.0) p = boost_matrix(1, options_.boost_rapidity) * p;
  return p;
}

CVector StateSampler::sample_spinor() {
  CVector xi(rep_->dim());
  for (int a = 0; a < rep_->dim(); ++a) {
    const double radius = std::sqrt(uniform(0.0, 1.0));
    const double phase = uniform(0.0, 2.0 * M_PI);
    xi[a] = std::polar(radius, phase);
  }
  return xi;
}

PhaseState StateSampler::sample() {
  PhaseState s;
  s.spin = rep_->spin();
  s.lambda = options_.lambda;
  for (int mu = 0; mu < 4; ++mu) s.x[mu] = uniform(-options_.position_scale, options_.position_scale);
  s.p = sample_momentum();
  s.xi = sample_spinor();
  if (options_.norm != SpinorNorm::None) {
    const double target = options_.norm == SpinorNorm::Plus ? 1.0 : -1.0;
    double n = s.xi_norm(*rep_);
    // resample until the indefinite norm has the requested sign
    while (n * target <= 1e-3) {
      s.xi = sample_spinor();
      n = s.xi_norm(*rep_);
    }
    s.xi /= std::sqrt(std::abs(n));
  }
  return s;
}

}  // namespace spinphase
