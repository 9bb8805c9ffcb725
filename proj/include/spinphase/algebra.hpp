#pragma once

#include <array>
#include <string>

#include "spinphase/observables.hpp"

namespace spinphase {

/// Measured 1/2 S*_{mn} S^{mn} / (W.r); pinned by the brute-force contraction in the tests.
inline constexpr double kDualSpinSquareOverWr = 2.0;
/// Measured c in S^{mn} = p^m r^n - p^n r^m + c p^2 {r^m, r^n}.
inline constexpr double kSpinFromRadiusBracket = 1.0;

struct RelationResidual {
  std::string relation;
  double max_abs = 0.0;
  /// Per-state residual divided by the largest term magnitude, maximised over states.
  double max_rel = 0.0;
};

struct AlgebraReport {
  int states = 0;
  double tolerance = 0.0;
  std::array<RelationResidual, 3> relations{
      RelationResidual{"{W,W}=eps p W"}, RelationResidual{"{W,r}=eps p r"}, RelationResidual{"{r,r}=-eps p W/p^4"}};
  bool passed() const;
};

/// Evaluates the W/r bracket relations at n sampled states without throwing.
/// The bracket side uses the AD engine; the right-hand sides use direct
/// matrix evaluation and eps-contraction with `oracle_metric`.
AlgebraReport measure_algebra(const RepPtr& rep, StateSampler& sampler, int n, double rel_tol = 1e-9,
                              const Metric& oracle_metric = Metric::minkowski());

/// As measure_algebra, but throws AlgebraViolation when any relation exceeds rel_tol.
AlgebraReport verify_algebra(const RepPtr& rep, StateSampler& sampler, int n, double rel_tol = 1e-9,
                             const Metric& oracle_metric = Metric::minkowski());

/// Brackets {A_m, B_n} for all index pairs, from first-order jets.
CTensor4 bracket_matrix(const ObservableVec& a, const ObservableVec& b, const PhasePoint& pt);

/// max over m<n of |{z^m, z^n}| with z = x - r.
double check_z_not_canonical(const RepPtr& rep, const PhaseState& state);
/// max over m<n of |{x^m, x^n}|.
double check_x_canonical(const RepPtr& rep, const PhaseState& state);

/// Residuals of the algebraic identities linking S, r, W and p at one state.
struct InvariantResiduals {
  double reconstruction = 0.0;   ///< S + (r p - p r) - eps W p / p^2, relative to |S|
  double spin_square = 0.0;      ///< 1/2 S.S - (-W^2/p^2 + p^2 r^2), relative
  double dual_square = 0.0;      ///< 1/2 S*.S, raw
  double w_dot_r = 0.0;          ///< W.r, raw
  double r_dot_p = 0.0;
  double w_dot_p = 0.0;
  double scale = 1.0;            ///< max(1, |S|, |W|, |r||p|)
};

InvariantResiduals invariant_residuals(const RepMatrices& rep, const PhaseState& state,
                                       const Metric& metric = Metric::minkowski());

}  // namespace spinphase
