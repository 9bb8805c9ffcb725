#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spinphase/jet.hpp"
#include "spinphase/phase_state.hpp"

namespace spinphase {

/// Coordinate jets seeded at a phase point, handed to observable expressions.
class JetCoords {
public:
  JetCoords(const PhasePoint& point, int order) : point_(point), order_(order) {}

  int order() const noexcept { return order_; }
  int size() const noexcept { return point_.layout.size(); }
  const PhasePoint& point() const noexcept { return point_; }

  Jet x(int mu) const { return var(PhaseLayout::x(mu)); }
  /// Canonical momentum with lower index.
  Jet p_lower(int mu) const { return var(PhaseLayout::p(mu)); }
  /// Upper-index momentum p^mu = g^{mu mu} p_mu.
  Jet p_upper(int mu) const { return p_lower(mu) * Metric::minkowski().g(mu, mu); }
  Jet xi(int a) const { return var(point_.layout.xi(a)); }
  Jet eta(int a) const { return var(point_.layout.eta(a)); }
  Jet constant(Complex v) const { return Jet::constant(v, size(), order_); }

  /// eta M xi, with its derivatives filled in analytically.
  Jet bilinear(const CMatrix& m) const;
  /// p^2 = g^{mu nu} p_mu p_nu
  Jet p_squared() const;

private:
  Jet var(int index) const { return Jet::variable(point_.coords[index], index, size(), order_); }

  const PhasePoint& point_;
  int order_;
};

/// A complex-valued phase-space function that can report exact derivatives.
///
/// Expressions are evaluated on jets, so every observable yields its value,
/// gradient and (for non-bracket observables) Hessian at any point. Brackets
/// consume one derivative order, so a bracket of primitives is itself
/// differentiable once and can appear inside a further bracket.
class Observable {
public:
  using JetFn = std::function<Jet(const PhasePoint&, int order)>;
  using Expr = std::function<Jet(const JetCoords&)>;

  Observable() = default;
  Observable(std::string label, JetFn fn, int max_order = 2)
      : label_(std::move(label)), fn_(std::move(fn)), max_order_(max_order) {}

  /// Observable given by an expression on coordinate jets.
  static Observable from_expr(std::string label, Expr expr);
  static Observable constant(std::string label, Complex v);

  const std::string& label() const noexcept { return label_; }
  /// Highest derivative order this observable can supply.
  int max_order() const noexcept { return max_order_; }

  Jet jet(const PhasePoint& pt, int order) const;
  Complex value(const PhasePoint& pt) const { return jet(pt, 0).value(); }
  CVector gradient(const PhasePoint& pt) const { return jet(pt, 1).grad(); }

  Complex operator()(const PhasePoint& pt) const { return value(pt); }

private:
  std::string label_;
  JetFn fn_;
  int max_order_ = 2;
};

Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
Observable operator*(const Observable& a, const Observable& b);
Observable operator*(Complex s, const Observable& a);

/// {A, B} = dA/dx^mu dB/dp_mu - dA/dp_mu dB/dx^mu + dA/dxi dB/deta - dB/dxi dA/deta.
Observable bracket(const Observable& a, const Observable& b);

/// Bracket value from first-order jets of A and B.
Complex bracket_value(const Jet& a, const Jet& b, const PhaseLayout& layout);

using ObservableVec = std::array<Observable, 4>;
using ObservableTensor = std::array<std::array<Observable, 4>, 4>;

/// Component-wise numerical values.
CVec4 evaluate(const ObservableVec& v, const PhasePoint& pt);
CTensor4 evaluate(const ObservableTensor& t, const PhasePoint& pt);

/// Canonical coordinate observables.
Observable coordinate_x(int mu);
Observable momentum_lower(int mu);

}  // namespace spinphase
