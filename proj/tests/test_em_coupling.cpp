#include <gtest/gtest.h>

#include "spinphase/em_coupling.hpp"
#include "test_support.hpp"

using namespace spinphase;
using namespace spinphase::testing;

namespace {

RepPtr half() { return build_rep(SpinLabel::from_value(0.5)); }

Tensor4 magnetic(double b) {
  Tensor4 f = Tensor4::Zero();
  f(1, 2) = b;
  f(2, 1) = -b;
  return f;
}

Tensor4 electric(double e1) {
  Tensor4 f = Tensor4::Zero();
  f(0, 1) = e1;
  f(1, 0) = -e1;
  return f;
}

FieldConfig wave(double amp, double k, double charge) {
  // travelling along +x, polarised along y
  return FieldConfig::plane_wave(Vec4(0.0, 0.0, amp, 0.0), Vec4(k, -k, 0.0, 0.0), charge);
}

PhaseState moving_eigenstate(const RepMatrices& rep, double lambda = 1.0) {
  PhaseState st;
  st.p = Vec4(std::sqrt(1.0 + 0.25 + 0.04), 0.5, 0.0, 0.2);
  // uniform-field potentials vanish at the origin, so p is also the kinetic momentum
  st.x = Vec4::Zero();
  st.lambda = lambda;
  st.spin = rep.spin();
  st.xi = basis_eigenstate(rep, st.p, +1, 0);
  return st;
}

PhaseState rest_mix() { return rest_state(1.0, 1.0, (unit(4, 0) + unit(4, 3)) / std::sqrt(2.0)); }

double xi_bar_xi(const RepMatrices& rep, const CVector& xi) {
  return rep.bilinear(xi, CMatrix::Identity(rep.dim(), rep.dim())).real();
}

}  // namespace

TEST(Field, Validation) {
  EXPECT_NO_THROW(FieldConfig::none().validate());
  EXPECT_NO_THROW(FieldConfig::uniform(magnetic(0.3), 1.0).validate());
  Tensor4 bad = magnetic(0.3);
  bad(1, 2) = 0.4;
  EXPECT_THROW(FieldConfig::uniform(bad, 1.0).validate(), Error);
  EXPECT_NO_THROW(wave(0.1, 0.5, 1.0).validate());
  EXPECT_THROW(FieldConfig::plane_wave(Vec4(0, 0, 0.1, 0), Vec4(1.0, -0.5, 0, 0), 1.0).validate(), Error);
  EXPECT_THROW(FieldConfig::plane_wave(Vec4(0, 0.1, 0, 0), Vec4(1.0, -1.0, 0, 0), 1.0).validate(), Error);
}

TEST(Field, GradientMatchesFiniteDifferences) {
  const Tensor4 f = magnetic(0.3) + electric(-0.2);
  FieldConfig uniform = FieldConfig::uniform(f, 1.0);
  uniform.gauge_offset = Vec4(0.1, 0.2, -0.3, 0.4);
  for (const FieldConfig& field : {uniform, wave(0.2, 0.7, 1.0)}) {
    const Vec4 x(0.3, -0.4, 1.1, 0.2);
    const Tensor4 grad = field.potential_gradient(x);
    const double h = 1e-6;
    for (int m = 0; m < 4; ++m) {
      Vec4 step = Vec4::Zero();
      step[m] = h;
      const Vec4 fd = (field.potential(x + step) - field.potential(x - step)) / (2 * h);
      for (int n = 0; n < 4; ++n) EXPECT_NEAR(grad(m, n), fd[n], 1e-9);
    }
  }
  EXPECT_LT((uniform.field_strength(Vec4(1, 2, 3, 4)) - f).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EomEm, ZeroChargeIsFree) {
  const RepPtr rep = half();
  StateSampler sampler(rep, 61, {});
  FieldConfig field = FieldConfig::uniform(magnetic(0.5), 0.0);
  for (int i = 0; i < 10; ++i) {
    const PhaseState st = sampler.sample();
    const StateDerivative a = eom_em(*rep, st, field), b = eom(*rep, st);
    EXPECT_EQ(a.dx, b.dx);
    EXPECT_EQ(a.dp, b.dp);
    EXPECT_EQ(a.dxi, b.dxi);
  }
  EXPECT_THROW(eom_em(*rep, rest_state(1.0, 0.0, unit(4, 0)), field), Error);
}

TEST(EomEm, CanonicalMomentumMatchesBracketWithHamiltonian) {
  const RepPtr rep = half();
  StateSampler sampler(rep, 62, {.lambda = 0.8});
  for (const FieldConfig& field : {FieldConfig::uniform(magnetic(0.4) + electric(0.3), 0.9), wave(0.3, 0.6, 0.9)}) {
    const Observable h = hamiltonian_em(rep, 0.8, field);
    for (int i = 0; i < 10; ++i) {
      const PhaseState st = sampler.sample();
      const PhasePoint pt = to_point(st, *rep);
      const Vec4 dp_lower = Metric::minkowski().lower(eom_em(*rep, st, field).dp);
      for (int mu = 0; mu < 4; ++mu) {
        EXPECT_NEAR(bracket(momentum_lower(mu), h).value(pt).real(), dp_lower[mu], 1e-9);
        EXPECT_NEAR(bracket(coordinate_x(mu), h).value(pt).real(), eom_em(*rep, st, field).dx[mu], 1e-9);
      }
      // H_em equals xi-bar beta.pi xi
      const Vec4 pi = kinetic_momentum(st, field);
      EXPECT_NEAR(h.value(pt).real(), rep->bilinear(st.xi, rep->slash(pi)).real(), 1e-12);
    }
  }
}

TEST(EomEm, KineticMomentumFollowsLorentzForce) {
  const RepPtr rep = half();
  const PhaseState st = moving_eigenstate(*rep);
  const FieldConfig field = FieldConfig::uniform(magnetic(0.2) + electric(0.05), 1.0);
  const double dt = 1e-3;
  const auto res = integrate_em(*rep, st, field, {.dt = dt, .tau_end = 2.0, .stride = 1});
  const auto& series = res.report.series;
  for (std::size_t k = 1; k + 1 < series.size(); k += 50) {
    const Vec4 dpi = Metric::minkowski().lower((series[k + 1].kinetic - series[k - 1].kinetic) / (2 * dt));
    const Vec4 force = field.charge * field.F * Metric::minkowski().lower(res.samples[k].u);
    // F_{mn} x'^n with x'^n upper
    Vec4 expected;
    for (int m = 0; m < 4; ++m) expected[m] = field.charge * field.F.row(m).dot(res.samples[k].u);
    EXPECT_LT((dpi - expected).cwiseAbs().maxCoeff(), 1e-6);
    (void)force;
  }
}

TEST(EomEm, EigenstateTracksSpinlessOracle) {
  const RepPtr rep = half();
  const PhaseState st = moving_eigenstate(*rep);
  const double e = 1.0, b = 0.1;
  const FieldConfig field = FieldConfig::uniform(magnetic(b), e);
  const double period = zbw_period(st);
  const auto res = integrate_em(*rep, st, field, {.dt = period / 2000, .tau_end = period, .stride = 100});
  // spinless oracle: pi(tau) = exp(tau e/m F^m_n) pi(0)
  const double m = std::sqrt(st.p_squared());
  Eigen::Matrix4d gen = Eigen::Matrix4d::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) gen(mu, nu) = kSig[mu] * field.F(mu, nu) * e / m;
  double envelope = 0.0;
  for (const auto& pt : res.report.series) envelope = std::max(envelope, pt.envelope);
  EXPECT_GT(envelope, 0.0);
  const double tol = 4.0 * e * field.F.cwiseAbs().maxCoeff() * envelope + 1e-10;
  for (const auto& pt : res.report.series) {
    const Vec4 oracle = expm_pade((gen * pt.tau).cast<Complex>()).real() * kinetic_momentum(st, field);
    EXPECT_LT((pt.kinetic - oracle).cwiseAbs().maxCoeff(), tol) << pt.tau;
  }
}

TEST(EomEm, GaugeShiftMovesCanonicalMomentumOnly) {
  const RepPtr rep = half();
  StateSampler sampler(rep, 63, {});
  const PhaseState st = sampler.sample();
  const Vec4 c(0.2, -0.1, 0.3, 0.05);
  for (FieldConfig field : {FieldConfig::uniform(magnetic(0.3), 0.7), wave(0.2, 0.8, 0.7)}) {
    const IntegratorConfig cfg{.dt = 1e-3, .tau_end = 3.0, .stride = 100};
    const auto base = integrate_em(*rep, st, field, cfg);
    field.gauge_offset = c;
    PhaseState shifted = st;
    shifted.p += field.charge * Metric::minkowski().lower(c);  // raising and lowering coincide for a diagonal metric
    const auto moved = integrate_em(*rep, shifted, field, cfg);
    ASSERT_EQ(base.samples.size(), moved.samples.size());
    for (std::size_t k = 0; k < base.samples.size(); ++k) {
      EXPECT_LT((base.samples[k].state.x - moved.samples[k].state.x).cwiseAbs().maxCoeff(), 1e-8);
      const Vec4 dp = moved.samples[k].state.p - base.samples[k].state.p;
      EXPECT_LT((dp - field.charge * Metric::minkowski().lower(c)).cwiseAbs().maxCoeff(), 1e-8);
      EXPECT_LT((base.report.series[k].kinetic - moved.report.series[k].kinetic).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(EomEm, BilinearNormConserved) {
  const RepPtr rep = half();
  StateSampler sampler(rep, 64, {});
  const PhaseState st = sampler.sample();
  const double n0 = xi_bar_xi(*rep, st.xi);
  for (const FieldConfig& field : {FieldConfig::uniform(magnetic(0.1) + electric(0.05), 1.0), wave(0.1, 0.9, 1.0)}) {
    const auto res = integrate_em(*rep, st, field, {.dt = zbw_period(st) / 2000, .tau_end = 5 * zbw_period(st), .stride = 200});
    for (const auto& s : res.samples) EXPECT_NEAR(xi_bar_xi(*rep, s.state.xi), n0, 1e-10);
  }
}

TEST(Interaction, FreeLimitMatchesFreeDynamics) {
  const RepPtr rep = half();
  StateSampler sampler(rep, 65, {});
  const PhaseState st = sampler.sample();
  const double period = zbw_period(st);
  const IntegratorConfig cfg{.dt = period / 2000, .tau_end = 10 * period, .stride = 200};
  const auto em = integrate_em(*rep, st, FieldConfig::uniform(magnetic(0.5), 0.0), cfg);
  const auto free = integrate(*rep, st, cfg);
  ASSERT_EQ(em.samples.size(), free.size());
  const double env0 = em.report.series.front().envelope;
  const double purity0 = eigen_split(*rep, st).purity;
  EXPECT_GT(env0, 0.1);
  for (std::size_t k = 0; k < free.size(); ++k) {
    const InteractionPoint& pt = em.report.series[k];
    EXPECT_NEAR(pt.envelope, env0, 1e-8);
    EXPECT_NEAR(pt.purity, purity0, 1e-10);
    EXPECT_NEAR(pt.radius, std::sqrt(-mdot(free[k].r, free[k].r)), 1e-10);
    EXPECT_EQ(pt.kinetic, pt.canonical);
  }
}

TEST(Interaction, FieldCreatesMixtureFromEigenstate) {
  const RepPtr rep = half();
  const PhaseState st = moving_eigenstate(*rep);
  const double period = zbw_period(st);
  const auto res = integrate_em(*rep, st, FieldConfig::uniform(magnetic(0.05), 1.0),
                                {.dt = period / 2000, .tau_end = period, .stride = 20});
  const auto& series = res.report.series;
  EXPECT_NEAR(series.front().purity, 1.0, 1e-14);
  EXPECT_LT(series.front().envelope, 1e-12);
  const std::size_t half_period = series.size() / 2;
  for (std::size_t k = 1; k < series.size(); ++k) {
    EXPECT_LT(series[k].purity, 1.0) << series[k].tau;
    if (k > half_period) continue;
    EXPECT_LT(series[k].purity, series[k - 1].purity) << series[k].tau;
    EXPECT_GT(series[k].envelope, series[k - 1].envelope) << series[k].tau;
  }
  EXPECT_GT(series[half_period].envelope, 1e-3);
  // the admixture oscillates at the zitterbewegung frequency and largely returns after one period
  EXPECT_GT(series.back().purity, series[half_period].purity);
}

TEST(Interaction, PlaneWaveKeepsZitterbewegungFrequency) {
  const RepPtr rep = half();
  const PhaseState st = rest_mix();
  const double period = zbw_period(st);
  const auto res = integrate_em(*rep, st, wave(0.05, 0.3, 0.1), {.dt = period / 1000, .tau_end = 10 * period, .stride = 1});
  const double measured = measured_zbw_frequency(res.samples);
  const double free = zbw_angular_frequency(st.p_squared(), st.lambda, st.spin);
  EXPECT_LT(std::abs(measured - free) / free, 0.01);
}

TEST(Interaction, ConvergesLinearlyToFreeTrajectory) {
  const RepPtr rep = half();
  const PhaseState st = rest_mix();
  const IntegratorConfig cfg{.dt = 1e-3, .tau_end = 2.0, .stride = 2000};
  const PhaseState free = integrate(*rep, st, cfg).back().state;
  auto deviation = [&](double e) {
    const auto res = integrate_em(*rep, st, FieldConfig::uniform(magnetic(0.4) + electric(0.2), e), cfg);
    return (res.samples.back().state.x - free.x).norm();
  };
  const double d1 = deviation(1e-3), d2 = deviation(2e-3), d4 = deviation(4e-3);
  EXPECT_GT(d1, 0.0);
  EXPECT_NEAR(d2 / d1, 2.0, 0.05);
  EXPECT_NEAR(d4 / d2, 2.0, 0.05);
}

TEST(Interaction, CanonicalVariantUsesCanonicalMomentum) {
  const RepPtr rep = half();
  const PhaseState st = moving_eigenstate(*rep);
  const FieldConfig field = FieldConfig::uniform(magnetic(0.2), 1.0);
  const auto res = integrate_em(*rep, st, field, {.dt = 1e-2, .tau_end = 1.0, .stride = 10}, MomentumChoice::Canonical);
  EXPECT_EQ(res.report.momentum, MomentumChoice::Canonical);
  for (std::size_t k = 0; k < res.samples.size(); ++k) {
    const PhaseState& s = res.samples[k].state;
    EXPECT_NEAR(res.report.series[k].purity, eigen_split(*rep, s.xi, s.p).purity, 1e-14);
  }
}

TEST(Interaction, OversizedStepIsUnstable) {
  const RepPtr rep = half();
  try {
    integrate_em(*rep, rest_mix(), FieldConfig::uniform(magnetic(0.1), 1.0), {.dt = 100.0, .tau_end = 1e6, .stride = 1000});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StepUnstable);
  }
}

TEST(Envelope, FreeCircularOrbitRadius) {
  const RepPtr rep = half();
  const PhaseState st = rest_mix();
  const double env = zbw_envelope(*rep, st, st.p);
  double largest = 0.0;
  for (int k = 0; k < 64; ++k) {
    const Vec4 r = closed_form_radius(*rep, st, k * zbw_period(st) / 64);
    largest = std::max(largest, r.tail<3>().norm());
  }
  EXPECT_NEAR(env, largest, 1e-12);
  EXPECT_GT(env, 0.1);
}
