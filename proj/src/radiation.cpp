#include "spinphase/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spinphase {

namespace {

Complex xi_bar_dot(const RepMatrices& rep, const CVector& a, const CVector& b) {
  return (a.adjoint() * rep.parity() * b)(0, 0);
}

constexpr double kEmptySector = 1e-13;

SectorKind classify(double eigenvalue, double mass) {
  const double tol = 1e-8 * std::max(1.0, mass);
  if (std::abs(eigenvalue - mass) < tol) return SectorKind::Particle;
  if (std::abs(eigenvalue + mass) < tol) return SectorKind::Antiparticle;
  return SectorKind::Other;
}

double purity_of(const std::vector<SpinorSector>& comps) {
  double total = 0.0;
  double best = 0.0;
  for (const auto& c : comps) {
    total += std::abs(c.weight);
    best = std::max(best, std::abs(c.weight));
  }
  if (total == 0.0) throw Error(ErrorKind::InvalidArgument, "purity undefined for a spinor with zero sector weights");
  return best / total;
}

}  // namespace

const char* to_string(SectorKind kind) {
  switch (kind) {
    case SectorKind::Particle: return "particle";
    case SectorKind::Antiparticle: return "antiparticle";
    case SectorKind::Other: return "other";
  }
  return "other";
}

CVector EigenSplit::reconstruct() const {
  if (components.empty()) return {};
  CVector sum = CVector::Zero(components.front().amplitude.size());
  for (const auto& c : components) sum += c.amplitude;
  return sum;
}

EigenSplit eigen_split(const RepMatrices& rep, const PhaseState& state) { return eigen_split(rep, state.xi, state.p); }

EigenSplit eigen_split(const RepMatrices& rep, const CVector& xi, const Vec4& p) {
  const double p2 = Metric::minkowski().dot(p, p);
  if (!(p2 > 0.0)) throw Error(ErrorKind::InvalidArgument, "eigen_split needs timelike p");
  const double mass = std::sqrt(p2);
  const Spectral sp = spectral_decomposition(rep.slash(p));
  if (!(sp.condition <= kMaxEigenCondition))
    throw Error(ErrorKind::DegenerateOperator, "beta.p eigenbasis condition number " + std::to_string(sp.condition));

  const int d = rep.dim();
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sp.values[a].real() < sp.values[b].real(); });

  // cluster eigenvalues into sectors
  std::vector<std::vector<int>> clusters;
  const double tol = 1e-7 * std::max(1.0, mass);
  for (int idx : order) {
    if (!clusters.empty() && std::abs(sp.values[idx] - sp.values[clusters.back().front()]) < tol)
      clusters.back().push_back(idx);
    else
      clusters.push_back({idx});
  }

  EigenSplit out;
  out.condition = sp.condition;
  for (const auto& cl : clusters) {
    SpinorSector sec;
    double ev = 0.0;
    for (int idx : cl) ev += sp.values[idx].real();
    sec.eigenvalue = ev / static_cast<double>(cl.size());
    sec.kind = classify(sec.eigenvalue, mass);

    CMatrix vs(d, static_cast<long>(cl.size()));
    CMatrix ws(static_cast<long>(cl.size()), d);
    for (std::size_t k = 0; k < cl.size(); ++k) {
      vs.col(static_cast<long>(k)) = sp.vectors.col(cl[k]);
      ws.row(static_cast<long>(k)) = sp.inverse.row(cl[k]);
    }
    sec.amplitude = vs * (ws * xi);
    if (sec.amplitude.norm() <= kEmptySector * xi.norm()) continue;
    sec.weight = xi_bar_dot(rep, sec.amplitude, sec.amplitude).real();

    // Gram-Schmidt under the indefinite form; it is definite within a sector
    sec.basis = vs;
    for (long k = 0; k < sec.basis.cols(); ++k) {
      CVector v = sec.basis.col(k);
      for (long j = 0; j < k; ++j) {
        const CVector bj = sec.basis.col(j);
        v -= (xi_bar_dot(rep, bj, v) / xi_bar_dot(rep, bj, bj)) * bj;
      }
      const double n = xi_bar_dot(rep, v, v).real();
      sec.basis.col(k) = v / std::sqrt(std::abs(n));
      sec.basis_norms.push_back(xi_bar_dot(rep, sec.basis.col(k), sec.basis.col(k)).real());
    }
    out.components.push_back(std::move(sec));
  }
  out.purity = purity_of(out.components);
  return out;
}

std::vector<SectorProjector> sector_projectors(const RepMatrices& rep, const Vec4& p) {
  const double p2 = Metric::minkowski().dot(p, p);
  if (!(p2 > 0.0)) throw Error(ErrorKind::InvalidArgument, "sector_projectors needs timelike p");
  const int n = rep.spin().factors();
  const double mass = std::sqrt(p2);
  std::vector<double> evs;
  for (int k = 0; k <= n; ++k) evs.push_back(mass * (2.0 * k - n) / n);

  const CMatrix bp = rep.slash(p);
  const CMatrix id = CMatrix::Identity(rep.dim(), rep.dim());
  std::vector<SectorProjector> out;
  for (std::size_t j = 0; j < evs.size(); ++j) {
    CMatrix proj = id;
    for (std::size_t k = 0; k < evs.size(); ++k)
      if (k != j) proj = proj * (bp - evs[k] * id) / (evs[j] - evs[k]);
    out.push_back({evs[j], proj});
  }
  return out;
}

int sector_multiplicity(const RepMatrices& rep, int sign) {
  const CMatrix& b0 = rep.beta()[0];
  int count = 0;
  for (int a = 0; a < rep.dim(); ++a)
    if (std::abs(b0(a, a) - static_cast<double>(sign)) < 1e-12) ++count;
  return count;
}

CVector basis_eigenstate(const RepMatrices& rep, const Vec4& p, int sign, int polarization) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "eigenstate sign must be +1 or -1");
  // In the Dirac basis beta^0 is diagonal, so rest-frame eigenvectors are basis vectors.
  const CMatrix& b0 = rep.beta()[0];
  int seen = 0;
  int chosen = -1;
  for (int a = 0; a < rep.dim(); ++a) {
    if (std::abs(b0(a, a) - static_cast<double>(sign)) < 1e-12) {
      if (seen == polarization) {
        chosen = a;
        break;
      }
      ++seen;
    }
  }
  if (chosen < 0)
    throw Error(ErrorKind::InvalidArgument, "polarization index " + std::to_string(polarization) +
                                                " out of range for sector " + std::to_string(sign));
  CVector rest = CVector::Zero(rep.dim());
  rest[chosen] = 1.0;

  const double mass = std::sqrt(Metric::minkowski().dot(p, p));
  for (const auto& sp : sector_projectors(rep, p)) {
    if (std::abs(sp.eigenvalue - sign * mass) < 1e-12 * std::max(1.0, mass)) {
      CVector v = sp.projector * rest;
      const double n = xi_bar_dot(rep, v, v).real();
      return v / std::sqrt(std::abs(n));
    }
  }
  throw Error(ErrorKind::InvalidArgument, "no sector with eigenvalue sign " + std::to_string(sign));
}

Vec4 current(const RepMatrices& rep, const PhaseState& state, double charge) {
  return charge * evaluate_direct(rep, state).u;
}

Vec4 radiated_rate(const Vec4& u, const Vec4& r, double omega, double charge) {
  const Vec4 accel = -(omega * omega) * r;
  const double a2 = Metric::minkowski().dot(accel, accel);
  return (-2.0 / 3.0) * charge * charge * a2 * u;
}

Vec4 radiated_rate(const RepMatrices& rep, const PhaseState& state, double tau, double charge) {
  if (!(state.p_squared() > 0.0)) throw Error(ErrorKind::InvalidArgument, "radiated_rate needs p^2 > 0");
  const Vec4 r = closed_form_radius(rep, state, tau);
  PhaseState at = state;
  at.xi = SpinorPropagator(rep, state.p, state.lambda).apply(state.xi, tau);
  const Vec4 u = evaluate_direct(rep, at).u;
  return radiated_rate(u, r, zbw_angular_frequency(state), charge);
}

RadiationDiagnosis diagnose_radiation(const RepMatrices& rep, const PhaseState& state, double charge,
                                      const DiagnosisTolerances& tol) {
  require_physical(state, rep);
  RadiationDiagnosis out;
  out.purity = eigen_split(rep, state).purity;

  const double period = zbw_period(state);
  const double omega = zbw_angular_frequency(state);
  const SpinorPropagator prop(rep, state.p, state.lambda);
  out.min_accel_square = std::numeric_limits<double>::infinity();
  for (int k = 0; k < tol.samples_per_period; ++k) {
    const double tau = period * k / tol.samples_per_period;
    PhaseState at = state;
    at.xi = prop.apply(state.xi, tau);
    const DirectObservables d = evaluate_direct(rep, at);
    out.max_radius = std::max(out.max_radius, d.r.cwiseAbs().maxCoeff());

    const Vec4 r_closed = closed_form_radius(rep, state, tau);
    out.max_rate = std::max(out.max_rate, radiated_rate(d.u, r_closed, omega, charge).cwiseAbs().maxCoeff());
    const Vec4 accel = -(omega * omega) * r_closed;
    out.min_accel_square = std::min(out.min_accel_square, -Metric::minkowski().dot(accel, accel));
  }
  out.pure = 1.0 - out.purity < tol.purity;
  out.no_radius = out.max_radius < tol.radius;
  out.no_rate = out.max_rate < tol.rate * std::max(1.0, charge * charge * std::pow(omega, 4));
  return out;
}

FreeRadiationReport free_radiation_report(const RepMatrices& rep, const PhaseState& state, double charge,
                                          int periods) {
  require_physical(state, rep);
  FreeRadiationReport out;
  out.momentum_drain = eom(rep, state).dp.norm();
  out.rest_frame = state.p.tail<3>().norm() == 0.0;
  const double period = zbw_period(state);
  for (int k = 0; k < 64; ++k)
    out.peak_rate = std::max(out.peak_rate, radiated_rate(rep, state, period * k / 64.0, charge)[0]);
  out.zbw_frequency = zbw_angular_frequency(state);
  out.zbw_frequency_late = zbw_angular_frequency(propagate_exact(rep, state, periods * period));
  return out;
}

}  // namespace spinphase
