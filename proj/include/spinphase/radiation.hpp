#pragma once

#include <vector>

#include "spinphase/dynamics.hpp"

namespace spinphase {

enum class SectorKind { Particle, Antiparticle, Other };
const char* to_string(SectorKind kind);

/// Component of a spinor inside one eigenvalue sector of beta.p.
struct SpinorSector {
  double eigenvalue = 0.0;
  SectorKind kind = SectorKind::Other;
  /// Projection of xi onto the sector.
  CVector amplitude;
  /// Indefinite norm xi-bar_k xi_k of the projection (signed).
  double weight = 0.0;
  /// Sector basis, pseudo-orthonormal under xi-bar: each column has xi-bar v = +1 or -1.
  CMatrix basis;
  std::vector<double> basis_norms;
};

/// Decomposition of a spinor into beta.p eigen-sectors. Sectors xi has no
/// component in are left out.
///
/// Purity is max_k |w_k| / sum_k |w_k| with w_k the signed xi-bar norm of
/// sector k. Absolute values are taken because the indefinite norm makes
/// sector weights signed (negative for the antiparticle sector at s = 1/2).
struct EigenSplit {
  std::vector<SpinorSector> components;
  double purity = 1.0;
  double condition = 1.0;

  CVector reconstruct() const;
};

/// Numerical route: eigendecomposition of beta.p. Throws DegenerateOperator when
/// the eigenbasis condition number exceeds kMaxEigenCondition.
EigenSplit eigen_split(const RepMatrices& rep, const CVector& xi, const Vec4& p);
EigenSplit eigen_split(const RepMatrices& rep, const PhaseState& state);

/// Analytic route: beta.p has eigenvalues sqrt(p^2) (2k - n)/n, k = 0..n, and its
/// sector projectors follow by Lagrange interpolation in beta.p.
struct SectorProjector {
  double eigenvalue;
  CMatrix projector;
};
std::vector<SectorProjector> sector_projectors(const RepMatrices& rep, const Vec4& p);

/// Eigenstate of beta.p with eigenvalue sign * sqrt(p^2), built by projecting the
/// `polarization`-th rest-frame basis vector of that sector and normalising |xi-bar xi| = 1.
CVector basis_eigenstate(const RepMatrices& rep, const Vec4& p, int sign, int polarization);
/// Number of rest-frame basis vectors in the sign * sqrt(p^2) sector.
int sector_multiplicity(const RepMatrices& rep, int sign);

/// j^mu = e xi-bar beta^mu xi.
Vec4 current(const RepMatrices& rep, const PhaseState& state, double charge);

/// -(2/3) e^2 (a.a) u with a = r'' = -w^2 r.
Vec4 radiated_rate(const Vec4& u, const Vec4& r, double omega, double charge);
/// Rate at proper time tau along the free trajectory of `state`, with r'' from the closed form.
Vec4 radiated_rate(const RepMatrices& rep, const PhaseState& state, double tau, double charge);

/// Three independently computed no-radiation predicates over one zitterbewegung period.
struct RadiationDiagnosis {
  double purity = 1.0;
  double max_radius = 0.0;   ///< max |r^mu| from propagated spinors
  double max_rate = 0.0;     ///< max |rate^mu| from the closed-form radius
  double min_accel_square = 0.0;  ///< min over tau of -(r''.r''), must be >= 0
  bool pure = true;
  bool no_radius = true;
  bool no_rate = true;

  bool consistent() const { return pure == no_radius && no_radius == no_rate; }
};

struct DiagnosisTolerances {
  double purity = 1e-12;
  double radius = 1e-10;
  double rate = 1e-18;
  int samples_per_period = 64;
};

RadiationDiagnosis diagnose_radiation(const RepMatrices& rep, const PhaseState& state, double charge,
                                      const DiagnosisTolerances& tol = {});

/// Fields documenting the free-particle radiation inconsistency.
struct FreeRadiationReport {
  double momentum_drain = 0.0;      ///< |p'| from the equations of motion (zero)
  double peak_rate = 0.0;           ///< max rate^0 over a period
  bool rest_frame = false;          ///< spatial momentum vanishes
  double zbw_frequency = 0.0;       ///< at tau = 0
  double zbw_frequency_late = 0.0;  ///< after `periods` periods of emission
};

FreeRadiationReport free_radiation_report(const RepMatrices& rep, const PhaseState& state, double charge,
                                          int periods = 10);

}  // namespace spinphase
