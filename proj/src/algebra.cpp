#include "spinphase/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace spinphase {

namespace {

std::vector<Jet> jets_of(const ObservableVec& v, const PhasePoint& pt) {
  std::vector<Jet> out;
  out.reserve(4);
  for (const auto& o : v) out.push_back(o.jet(pt, 1));
  return out;
}

CTensor4 bracket_table(const std::vector<Jet>& a, const std::vector<Jet>& b, const PhaseLayout& layout) {
  CTensor4 out;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) out(m, n) = bracket_value(a[m], b[n], layout);
  return out;
}

void accumulate(RelationResidual& res, const CTensor4& lhs, const Tensor4& rhs) {
  const double diff = (lhs - rhs.cast<Complex>()).cwiseAbs().maxCoeff();
  const double scale = std::max({lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff(), 1e-300});
  res.max_abs = std::max(res.max_abs, diff);
  res.max_rel = std::max(res.max_rel, diff / scale);
}

double max_offdiag_bracket(const ObservableVec& v, const PhasePoint& pt) {
  const CTensor4 b = bracket_matrix(v, v, pt);
  double best = 0.0;
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n) best = std::max(best, std::abs(b(m, n)));
  return best;
}

}  // namespace

bool AlgebraReport::passed() const {
  return std::all_of(relations.begin(), relations.end(),
                     [this](const RelationResidual& r) { return r.max_rel <= tolerance; });
}

CTensor4 bracket_matrix(const ObservableVec& a, const ObservableVec& b, const PhasePoint& pt) {
  return bracket_table(jets_of(a, pt), jets_of(b, pt), pt.layout);
}

AlgebraReport measure_algebra(const RepPtr& rep, StateSampler& sampler, int n, double rel_tol,
                              const Metric& oracle_metric) {
  AlgebraReport report;
  report.tolerance = rel_tol;
  if (n <= 0) return report;
  const double lambda = sampler.options().lambda;
  const ObservableSuite suite = observables_suite(rep, lambda);
  const ObservableVec w_low = lower(suite.W);
  const ObservableVec r_low = lower(suite.r);

  for (int i = 0; i < n; ++i) {
    const PhaseState state = sampler.sample();
    const PhasePoint pt = to_point(state, *rep);
    const auto wj = jets_of(w_low, pt);
    const auto rj = jets_of(r_low, pt);

    const DirectObservables d = evaluate_direct(*rep, state);
    const double p2 = oracle_metric.dot(state.p, state.p);
    accumulate(report.relations[0], bracket_table(wj, wj, pt.layout), eps_contract_lower(state.p, d.W, oracle_metric));
    accumulate(report.relations[1], bracket_table(wj, rj, pt.layout), eps_contract_lower(state.p, d.r, oracle_metric));
    accumulate(report.relations[2], bracket_table(rj, rj, pt.layout),
               -eps_contract_lower(state.p, d.W, oracle_metric) / (p2 * p2));
    ++report.states;
  }
  return report;
}

AlgebraReport verify_algebra(const RepPtr& rep, StateSampler& sampler, int n, double rel_tol,
                             const Metric& oracle_metric) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "verify_algebra needs at least one state");
  AlgebraReport report = measure_algebra(rep, sampler, n, rel_tol, oracle_metric);
  for (const auto& r : report.relations)
    if (!(r.max_rel <= rel_tol))
      throw Error(ErrorKind::AlgebraViolation,
                  r.relation + " residual " + std::to_string(r.max_rel) + " exceeds " + std::to_string(rel_tol));
  return report;
}

double check_z_not_canonical(const RepPtr& rep, const PhaseState& state) {
  require_physical(state, *rep);
  const ObservableSuite suite = observables_suite(rep, state.lambda);
  return max_offdiag_bracket(suite.z, to_point(state, *rep));
}

double check_x_canonical(const RepPtr& rep, const PhaseState& state) {
  require_physical(state, *rep);
  ObservableVec x;
  for (int mu = 0; mu < 4; ++mu) x[mu] = coordinate_x(mu);
  return max_offdiag_bracket(x, to_point(state, *rep));
}

InvariantResiduals invariant_residuals(const RepMatrices& rep, const PhaseState& state, const Metric& metric) {
  const DirectObservables d = evaluate_direct(rep, state);
  const Vec4& p = state.p;
  const double p2 = metric.dot(p, p);
  InvariantResiduals out;
  out.scale = std::max({1.0, d.S.cwiseAbs().maxCoeff(), d.W.cwiseAbs().maxCoeff(),
                        d.r.cwiseAbs().maxCoeff() * p.cwiseAbs().maxCoeff()});

  const Tensor4 recon = d.S + (d.r * p.transpose() - p * d.r.transpose()) - eps_contract_upper(d.W, p, metric) / p2;
  out.reconstruction = recon.cwiseAbs().maxCoeff() / out.scale;

  const Tensor4 s_low = metric.lower_both(d.S);
  const double half_ss = 0.5 * (d.S.cwiseProduct(s_low)).sum();
  const double rhs9 = -metric.dot(d.W, d.W) / p2 + p2 * metric.dot(d.r, d.r);
  out.spin_square = std::abs(half_ss - rhs9) / (out.scale * out.scale);

  const Tensor4 s_dual = dual<double>(d.S, 1e-9 * out.scale, metric);
  out.dual_square = 0.5 * (s_dual.cwiseProduct(s_low)).sum();
  out.w_dot_r = metric.dot(d.W, d.r);
  out.r_dot_p = metric.dot(d.r, p);
  out.w_dot_p = metric.dot(d.W, p);
  return out;
}

}  // namespace spinphase
