#pragma once

#include "spinphase/observable.hpp"

namespace spinphase {

/// H = xi-bar beta.p xi, written as (-i/lambda) eta beta^mu p_mu xi.
Observable hamiltonian(const RepPtr& rep, double lambda);

/// The named observables as differentiable phase-space functions, upper indices.
struct ObservableSuite {
  ObservableVec u;       ///< xi-bar beta^mu xi
  ObservableTensor S;    ///< -lambda s xi-bar beta^{mn} xi
  ObservableVec W;       ///< lambda s xi-bar beta*^{mn} xi p_n
  ObservableVec r;       ///< (lambda s / p^2) xi-bar beta^{mn} xi p_n
  ObservableVec X;       ///< (1/p^2) J^{mn} p_n
  ObservableTensor L;    ///< x^m p^n - x^n p^m
  ObservableTensor J;    ///< L + S
  ObservableVec z;       ///< x - r
  Observable H;
  Observable f_slope;    ///< H / p^2
};

ObservableSuite observables_suite(const RepPtr& rep, double lambda);

/// Lowers the index of each component.
ObservableVec lower(const ObservableVec& v);

/// Observables evaluated directly from matrices and the spinor, without the AD engine.
struct DirectObservables {
  Vec4 u = Vec4::Zero();
  Vec4 r = Vec4::Zero();
  Vec4 W = Vec4::Zero();
  Vec4 X = Vec4::Zero();
  Tensor4 S = Tensor4::Zero();
  Tensor4 L = Tensor4::Zero();
  Tensor4 J = Tensor4::Zero();
  double H = 0.0;
  double f_slope = 0.0;
  double xi_norm = 0.0;
  /// Largest imaginary part discarded while forming the real observables.
  double max_imag = 0.0;
};

/// `momentum` replaces state.p in every spin observable (used with kinetic momentum under coupling).
DirectObservables evaluate_direct(const RepMatrices& rep, const PhaseState& state);
DirectObservables evaluate_direct(const RepMatrices& rep, const PhaseState& state, const Vec4& momentum);

}  // namespace spinphase
