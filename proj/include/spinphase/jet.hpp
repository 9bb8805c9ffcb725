#pragma once

#include "spinphase/types.hpp"

namespace spinphase {

/// Second-order forward-mode jet over n complex coordinates.
///
/// order 0 carries the value only, order 1 adds the gradient, order 2 adds the
/// Hessian. Binary operations produce the lower of the two operand orders.
/// All arithmetic is complex-analytic, so derivatives are holomorphic derivatives.
class Jet {
public:
  Jet() = default;

  static Jet constant(Complex value, int n, int order);
  static Jet variable(Complex value, int index, int n, int order);

  int order() const noexcept { return order_; }
  int size() const noexcept { return n_; }
  Complex value() const noexcept { return value_; }
  /// Valid when order() >= 1.
  const CVector& grad() const noexcept { return grad_; }
  /// Valid when order() >= 2.
  const CMatrix& hess() const noexcept { return hess_; }

  CVector& grad_mut() noexcept { return grad_; }
  CMatrix& hess_mut() noexcept { return hess_; }
  void set_value(Complex v) noexcept { value_ = v; }

  /// Drops derivative information above the given order.
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(Complex s);
  Jet& operator+=(Complex s) {
    value_ += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(Jet a) { return a *= -1.0; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, Complex s) { return a += s; }
  friend Jet operator+(Complex s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Complex s) { return a += -s; }

  /// f(a) given f(a0), f'(a0), f''(a0).
  friend Jet chain(const Jet& a, Complex f, Complex df, Complex d2f);

private:
  Jet(int n, int order);

  int n_ = 0;
  int order_ = 0;
  Complex value_{};
  CVector grad_;
  CMatrix hess_;
};

Jet inverse(const Jet& a);
Jet sqrt(const Jet& a);
Jet cos(const Jet& a);
Jet sin(const Jet& a);

}  // namespace spinphase
