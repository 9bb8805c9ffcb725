#include <cmath>
#include <numbers>

#include "spinphase/scenario.hpp"

namespace spinphase {

namespace {

double max_abs_diff(const Tensor4& a, const Tensor4& b) { return (a - b).cwiseAbs().maxCoeff(); }

void free_checks(const ScenarioConfig& cfg, const RepMatrices& rep, const std::vector<SampleRow>& rows, AuditReport& audit) {
  const bool exact = cfg.integrator.method == Method::ExactPropagator;
  const double drift_tol = exact ? 1e-9 : 1e-6;
  const double norm_tol = exact ? 1e-11 : 1e-8;
  const Metric& g = Metric::minkowski();

  const PhaseState& s0 = rows.front().sample.state;
  const DirectObservables d0 = evaluate_direct(rep, s0);
  const double n0 = s0.xi_norm(rep);
  double dp = 0.0, dj = 0.0, dw = 0.0, dn = 0.0, dh = 0.0, rp = 0.0, wp = 0.0;
  for (const auto& row : rows) {
    const PhaseState& s = row.sample.state;
    const DirectObservables d = evaluate_direct(rep, s);
    dp = std::max(dp, (s.p - s0.p).cwiseAbs().maxCoeff());
    dj = std::max(dj, max_abs_diff(d.J, d0.J));
    dw = std::max(dw, (d.W - d0.W).cwiseAbs().maxCoeff());
    dn = std::max(dn, std::abs(s.xi_norm(rep) - n0));
    dh = std::max(dh, std::abs(d.H - d0.H));
    rp = std::max(rp, std::abs(g.dot(d.r, s.p)));
    wp = std::max(wp, std::abs(g.dot(d.W, s.p)));
  }
  const double scale = std::max(1.0, s0.p.cwiseAbs().maxCoeff());
  audit.checks.push_back(check_below("momentum_constant", dp, 0.0));
  audit.checks.push_back(check_below("angular_momentum_drift", dj, drift_tol * scale));
  audit.checks.push_back(check_below("pauli_lubansky_drift", dw, drift_tol * scale));
  audit.checks.push_back(check_below("xi_bar_xi_drift", dn, norm_tol));
  audit.checks.push_back(check_below("xi_bar_beta_p_xi_drift", dh, norm_tol * scale));
  audit.checks.push_back(check_below("r_dot_p", rp, 1e-10 * scale));
  audit.checks.push_back(check_below("w_dot_p", wp, 1e-10 * scale * scale));

  const EigenSplit split = eigen_split(rep, s0);
  if (1.0 - split.purity < 1e-12) {
    double r_max = 0.0, line = 0.0;
    for (const auto& row : rows) {
      r_max = std::max(r_max, row.sample.r.cwiseAbs().maxCoeff());
      const Vec4 dx = row.sample.state.x - s0.x;
      if (std::abs(dx[0]) > 0.0)
        for (int i = 1; i < 4; ++i) line = std::max(line, std::abs(dx[i] / dx[0] - s0.p[i] / s0.p[0]));
    }
    audit.checks.push_back(check_below("eigenstate_radius", r_max, 1e-10));
    audit.checks.push_back(check_below("eigenstate_straight_line", line, 1e-10));
  }
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg) {
  const RepPtr rep = build_rep(cfg.spin);
  const PhaseState state = initial_state(cfg, *rep);
  const Metric& g = Metric::minkowski();

  RunResult out;
  AuditReport& audit = out.audit;
  audit.command = "run";
  audit.seed = cfg.seed;
  audit.config_hash = cfg.hash;

  std::vector<double> envelopes;
  if (cfg.interacting()) {
    const InteractionResult res = integrate_em(*rep, state, cfg.field, cfg.integrator, cfg.momentum_choice);
    for (std::size_t k = 0; k < res.samples.size(); ++k) {
      const InteractionPoint& pt = res.report.series[k];
      const Vec4 q = cfg.momentum_choice == MomentumChoice::Kinetic ? pt.kinetic : pt.canonical;
      const double omega = zbw_angular_frequency(g.dot(q, q), cfg.lambda, cfg.spin);
      SampleRow row{res.samples[k], pt.kinetic, pt.purity, radiated_rate(res.samples[k].u, res.samples[k].r, omega, cfg.charge)};
      out.rows.push_back(std::move(row));
      envelopes.push_back(pt.envelope);
    }
  } else {
    const double omega = zbw_angular_frequency(state);
    integrate(*rep, state, cfg.integrator, [&](const TrajectorySample& s) {
      SampleRow row{s, s.state.p, eigen_split(*rep, s.state).purity, radiated_rate(s.u, s.r, omega, cfg.charge)};
      out.rows.push_back(std::move(row));
      envelopes.push_back(zbw_envelope(*rep, s.state, s.state.p));
    });
  }

  // the bilinear xi-bar xi is conserved with and without the field
  if (cfg.interacting()) {
    const double n0 = state.xi_norm(*rep);
    double dn = 0.0;
    for (const auto& row : out.rows) dn = std::max(dn, std::abs(row.sample.state.xi_norm(*rep) - n0));
    audit.checks.push_back(check_below("xi_bar_xi_drift", dn, 1e-8));
  } else {
    free_checks(cfg, *rep, out.rows, audit);
  }

  std::vector<SampleRow> const& rows = out.rows;
  std::vector<TrajectorySample> samples;
  samples.reserve(rows.size());
  for (const auto& r : rows) samples.push_back(r.sample);
  const Vec4 pi0 = rows.front().kinetic;
  const double predicted = zbw_angular_frequency(g.dot(pi0, pi0), cfg.lambda, cfg.spin);
  double max_rate = 0.0, min_purity = 1.0, max_env = 0.0;
  for (const auto& r : rows) {
    max_rate = std::max(max_rate, std::abs(r.rate[0]));
    min_purity = std::min(min_purity, r.purity);
  }
  for (double e : envelopes) max_env = std::max(max_env, e);

  // below this amplitude the radius is roundoff and its zero crossings mean nothing
  const double measured = max_env > kOscillationFloor && samples.size() > 2 ? measured_zbw_frequency(samples) : std::nan("");
  if (std::isfinite(measured) && !cfg.interacting())
    audit.checks.push_back(check_below("zbw_frequency_relative", std::abs(measured / predicted - 1.0), 1e-3));

  nlohmann::json zbw;
  zbw["angular_frequency_predicted"] = predicted;
  zbw["angular_frequency_measured"] = std::isfinite(measured) ? nlohmann::json(measured) : nlohmann::json(nullptr);
  zbw["period"] = 2.0 * std::numbers::pi / predicted;
  zbw["amplitude"] = max_env;
  if (cfg.physical_mass_mev) {
    zbw["si_angular_frequency_predicted"] = to_si_angular(predicted, cfg);
    zbw["si_angular_frequency_measured"] =
        std::isfinite(measured) ? nlohmann::json(to_si_angular(measured, cfg)) : nlohmann::json(nullptr);
    zbw["si_unit"] = "rad/s";
  }
  audit.summary["zitterbewegung"] = zbw;
  audit.summary["samples"] = rows.size();
  audit.summary["spin"] = cfg.spin.value();
  audit.summary["lambda"] = cfg.lambda;
  audit.summary["mass"] = std::sqrt(g.dot(pi0, pi0));
  audit.summary["method"] = cfg.integrator.method == Method::Rk4 ? "rk4" : "exact";
  audit.summary["field"] = cfg.field.kind == FieldKind::None ? "none" : cfg.field.kind == FieldKind::Uniform ? "uniform" : "plane_wave";
  audit.summary["momentum_choice"] = cfg.momentum_choice == MomentumChoice::Kinetic ? "kinetic" : "canonical";
  audit.summary["purity_initial"] = rows.front().purity;
  audit.summary["purity_final"] = rows.back().purity;
  audit.summary["purity_min"] = min_purity;
  audit.summary["max_rate0"] = max_rate;
  return out;
}

std::string samples_csv_header() {
  std::string h = "tau";
  for (const char* name : {"x", "p", "pi", "u", "r", "W"})
    for (int m = 0; m < 4; ++m) h += "," + std::string(name) + std::to_string(m);
  for (const char* s : {"S01", "S02", "S03", "S12", "S13", "S23"}) h += "," + std::string(s);
  h += ",H,purity";
  for (int m = 0; m < 4; ++m) h += ",rad" + std::to_string(m);
  return h;
}

void write_samples_csv(std::ostream& out, const std::vector<SampleRow>& rows) {
  out << samples_csv_header() << '\n';
  for (const auto& row : rows) {
    const TrajectorySample& s = row.sample;
    std::string line = format_number(s.tau);
    auto put = [&line](double v) { line += ',' + format_number(v); };
    for (int m = 0; m < 4; ++m) put(s.state.x[m]);
    for (int m = 0; m < 4; ++m) put(s.state.p[m]);
    for (int m = 0; m < 4; ++m) put(row.kinetic[m]);
    for (int m = 0; m < 4; ++m) put(s.u[m]);
    for (int m = 0; m < 4; ++m) put(s.r[m]);
    for (int m = 0; m < 4; ++m) put(s.W[m]);
    put(s.S(0, 1));
    put(s.S(0, 2));
    put(s.S(0, 3));
    put(s.S(1, 2));
    put(s.S(1, 3));
    put(s.S(2, 3));
    put(s.H);
    put(row.purity);
    for (int m = 0; m < 4; ++m) put(row.rate[m]);
    out << line << '\n';
  }
}

}  // namespace spinphase
