#include <algorithm>
#include <cmath>

#include "spinphase/algebra.hpp"
#include "spinphase/scenario.hpp"

namespace spinphase {

namespace {

const Metric& oracle_metric(Fault fault) {
  static const Metric corrupted(Vec4(1.0, 1.0, -1.0, -1.0));
  return fault == Fault::CorruptedMetric ? corrupted : Metric::minkowski();
}

PhaseState generic_fixture() {
  PhaseState st;
  st.p = Vec4(std::sqrt(1.13), 0.3, 0.2, 0.0);
  st.x = Vec4(0.1, -0.2, 0.3, 0.05);
  st.xi = CVector(4);
  st.xi << Complex(0.8, 0), Complex(0, 0.3), Complex(0.4, -0.2), Complex(0.5, 0);
  return st;
}

void algebra_checks(AuditReport& audit, const VerifyOptions& opts) {
  for (int twice : {1, 2}) {
    const RepPtr rep = build_rep(SpinLabel::from_twice(twice));
    StateSampler sampler(rep, opts.seed + static_cast<std::uint64_t>(twice), {});
    const AlgebraReport r = measure_algebra(rep, sampler, opts.cases, 1e-9, oracle_metric(opts.fault));
    const std::string prefix = "algebra.s" + std::string(twice == 1 ? "1/2" : "1") + ".";
    const char* names[] = {"WW", "Wr", "rr"};
    for (int k = 0; k < 3; ++k) audit.checks.push_back(check_below(prefix + names[k], r.relations[k].max_rel, 1e-9));
  }
}

void invariant_checks(AuditReport& audit, const VerifyOptions& opts) {
  for (int twice : {1, 2}) {
    const RepPtr rep = build_rep(SpinLabel::from_twice(twice));
    StateSampler sampler(rep, opts.seed + 10 + static_cast<std::uint64_t>(twice), {});
    double recon = 0.0, square = 0.0, rp = 0.0, wp = 0.0, dual = 0.0;
    for (int i = 0; i < opts.cases; ++i) {
      const InvariantResiduals res = invariant_residuals(*rep, sampler.sample(), oracle_metric(opts.fault));
      const double s2 = res.scale * res.scale;
      recon = std::max(recon, res.reconstruction);
      square = std::max(square, res.spin_square);
      rp = std::max(rp, std::abs(res.r_dot_p) / res.scale);
      wp = std::max(wp, std::abs(res.w_dot_p) / s2);
      dual = std::max(dual, std::abs(res.dual_square - kDualSpinSquareOverWr * res.w_dot_r) / s2);
    }
    const std::string prefix = "invariants.s" + std::string(twice == 1 ? "1/2" : "1") + ".";
    audit.checks.push_back(check_below(prefix + "reconstruction", recon, 1e-10));
    audit.checks.push_back(check_below(prefix + "spin_square", square, 1e-10));
    audit.checks.push_back(check_below(prefix + "r_dot_p", rp, 1e-10));
    audit.checks.push_back(check_below(prefix + "w_dot_p", wp, 1e-10));
    audit.checks.push_back(check_below(prefix + "dual_square_ratio", dual, 1e-10));
  }
}

void canonical_checks(AuditReport& audit) {
  const RepPtr rep = build_rep(SpinLabel::from_twice(1));
  audit.checks.push_back(check_above("bracket.z_not_canonical", check_z_not_canonical(rep, generic_fixture()), 1e-3));
  audit.checks.push_back(check_below("bracket.x_canonical", check_x_canonical(rep, generic_fixture()), 1e-13));
}

double max_dx(const PhaseState& a, const PhaseState& b) { return (a.x - b.x).cwiseAbs().maxCoeff(); }

void integrator_checks(AuditReport& audit, const VerifyOptions& opts) {
  const RepPtr rep = build_rep(SpinLabel::from_twice(1));
  StateSampler sampler(rep, opts.seed + 20, {});
  const PhaseState st = sampler.sample();
  const double period = zbw_period(st);

  const auto rk = integrate(*rep, st, {.method = Method::Rk4, .dt = period / 1e4, .tau_end = period, .stride = 100});
  const auto ex = integrate(*rep, st, {.method = Method::ExactPropagator, .dt = period / 1e4, .tau_end = period, .stride = 100});
  double worst = 0.0;
  for (std::size_t k = 0; k < rk.size() && k < ex.size(); ++k) worst = std::max(worst, max_dx(rk[k].state, ex[k].state));
  audit.checks.push_back(check_below("dynamics.rk4_vs_exact", worst, 1e-6));

  const PhaseState exact = propagate_exact(*rep, st, period);
  auto error = [&](int steps) {
    return max_dx(integrate(*rep, st, {.method = Method::Rk4, .dt = period / steps, .tau_end = period, .stride = steps}).back().state,
                  exact);
  };
  const double ratio = error(40) / error(80);
  audit.checks.push_back(check_above("dynamics.convergence_ratio_min", ratio, 12.0));
  audit.checks.push_back(check_below("dynamics.convergence_ratio_max", ratio, 20.0));

  double dj = 0.0, dw = 0.0, dn = 0.0, dh = 0.0;
  for (int i = 0; i < std::min(opts.cases, 5); ++i) {
    const PhaseState s0 = sampler.sample();
    const DirectObservables d0 = evaluate_direct(*rep, s0);
    const double t = zbw_period(s0);
    const auto samples = integrate(*rep, s0, {.method = Method::ExactPropagator, .dt = t / 50, .tau_end = 10 * t});
    for (const auto& s : samples) {
      const DirectObservables d = evaluate_direct(*rep, s.state);
      dj = std::max(dj, (d.J - d0.J).cwiseAbs().maxCoeff());
      dw = std::max(dw, (d.W - d0.W).cwiseAbs().maxCoeff());
      dn = std::max(dn, std::abs(s.state.xi_norm(*rep) - s0.xi_norm(*rep)));
      dh = std::max(dh, std::abs(d.H - d0.H));
    }
  }
  audit.checks.push_back(check_below("dynamics.J_drift", dj, 1e-9));
  audit.checks.push_back(check_below("dynamics.W_drift", dw, 1e-9));
  audit.checks.push_back(check_below("dynamics.xi_bar_xi_drift", dn, 1e-11));
  audit.checks.push_back(check_below("dynamics.xi_bar_beta_p_xi_drift", dh, 1e-11));
}

void hamilton_checks(AuditReport& audit, const VerifyOptions& opts) {
  const RepPtr rep = build_rep(SpinLabel::from_twice(1));
  StateSampler sampler(rep, opts.seed + 30, {});
  const ObservableSuite suite = observables_suite(rep, 1.0);
  double worst = 0.0;
  for (int i = 0; i < std::min(opts.cases, 20); ++i) {
    const PhaseState st = sampler.sample();
    const PhasePoint pt = to_point(st, *rep);
    const double h = 1e-4;
    const PhaseState fwd = propagate_exact(*rep, st, h), bwd = propagate_exact(*rep, st, -h);
    const DirectObservables df = evaluate_direct(*rep, fwd), db = evaluate_direct(*rep, bwd);
    for (int m = 0; m < 4; ++m) {
      worst = std::max(worst, std::abs(bracket(coordinate_x(m), suite.H).value(pt).real() - (fwd.x[m] - bwd.x[m]) / (2 * h)));
      worst = std::max(worst, std::abs(bracket(suite.r[m], suite.H).value(pt).real() - (df.r[m] - db.r[m]) / (2 * h)));
      for (int n = m + 1; n < 4; ++n)
        worst = std::max(worst, std::abs(bracket(suite.S[m][n], suite.H).value(pt).real() - (df.S(m, n) - db.S(m, n)) / (2 * h)));
    }
  }
  audit.checks.push_back(check_below("hamilton.bracket_vs_slope", worst, 1e-6));
}

void radiation_checks(AuditReport& audit, const VerifyOptions& opts) {
  const RepPtr rep = build_rep(SpinLabel::from_twice(1));
  StateSampler sampler(rep, opts.seed + 40, {});
  int disagreements = 0;
  for (int i = 0; i < opts.cases; ++i) {
    PhaseState st = sampler.sample();
    if (i % 2 == 0) st.xi = basis_eigenstate(*rep, st.p, i % 4 == 0 ? 1 : -1, (i / 2) % 2);
    if (!diagnose_radiation(*rep, st, 1.0).consistent()) ++disagreements;
  }
  audit.checks.push_back(check_below("radiation.predicate_disagreements", disagreements, 0.0));
}

void em_checks(AuditReport& audit) {
  const RepPtr rep = build_rep(SpinLabel::from_twice(1));
  const Metric& g = Metric::minkowski();
  Tensor4 f = Tensor4::Zero();
  f(1, 2) = 0.05;
  f(2, 1) = -0.05;

  PhaseState mix;
  mix.p = Vec4(1.0, 0.0, 0.0, 0.0);
  mix.xi = (basis_eigenstate(*rep, mix.p, 1, 0) + basis_eigenstate(*rep, mix.p, -1, 1)) / std::sqrt(2.0);
  const IntegratorConfig short_run{.dt = 1e-3, .tau_end = 2.0, .stride = 2000};
  const PhaseState free = integrate(*rep, mix, short_run).back().state;
  auto deviation = [&](double e) {
    return (integrate_em(*rep, mix, FieldConfig::uniform(f, e), short_run).samples.back().state.x - free.x).norm();
  };
  const double d1 = deviation(1e-3), d2 = deviation(2e-3);
  audit.checks.push_back(check_below("em.linear_in_charge", std::abs(d2 / d1 - 2.0), 0.05));

  PhaseState eig;
  eig.p = Vec4(std::sqrt(1.29), 0.5, 0.0, 0.2);
  eig.xi = basis_eigenstate(*rep, eig.p, 1, 0);
  const double period = zbw_period(eig);
  const auto res = integrate_em(*rep, eig, FieldConfig::uniform(f, 1.0), {.dt = period / 2000, .tau_end = period / 2, .stride = 20});
  int violations = 0;
  const auto& series = res.report.series;
  for (std::size_t k = 1; k < series.size(); ++k)
    if (!(series[k].purity < series[k - 1].purity)) ++violations;
  audit.checks.push_back(check_below("em.purity_decay_violations", violations, 0.0));
  audit.checks.push_back(check_above("em.purity_deficit", 1.0 - series.back().purity, 0.0));

  const FieldConfig wave = FieldConfig::plane_wave(Vec4(0.0, 0.0, 0.05, 0.0), Vec4(0.3, -0.3, 0.0, 0.0), 0.1);
  const double t = zbw_period(mix);
  const auto pw = integrate_em(*rep, mix, wave, {.dt = t / 1000, .tau_end = 10 * t});
  const double measured = measured_zbw_frequency(pw.samples);
  const Vec4 pi0 = kinetic_momentum(mix, wave);
  const double expected = zbw_angular_frequency(g.dot(pi0, pi0), mix.lambda, mix.spin);
  audit.checks.push_back(check_below("em.plane_wave_frequency", std::abs(measured / expected - 1.0), 0.01));
}

}  // namespace

AuditReport run_verify(const VerifyOptions& opts) {
  AuditReport audit;
  audit.command = "verify";
  audit.seed = opts.seed;
  audit.summary["cases"] = opts.cases;
  audit.summary["fault"] = opts.fault == Fault::CorruptedMetric ? "corrupted-metric" : "none";
  if (opts.cases < 0) throw Error(ErrorKind::ConfigError, "cases must be >= 0");
  if (opts.cases == 0) return audit;

  algebra_checks(audit, opts);
  invariant_checks(audit, opts);
  canonical_checks(audit);
  integrator_checks(audit, opts);
  hamilton_checks(audit, opts);
  radiation_checks(audit, opts);
  em_checks(audit);
  return audit;
}

}  // namespace spinphase
