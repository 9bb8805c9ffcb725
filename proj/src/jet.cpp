#include "spinphase/jet.hpp"

#include <algorithm>
#include <cmath>

namespace spinphase {

Jet::Jet(int n, int order) : n_(n), order_(order) {
  if (order >= 1) grad_ = CVector::Zero(n);
  if (order >= 2) hess_ = CMatrix::Zero(n, n);
}

Jet Jet::constant(Complex value, int n, int order) {
  Jet j(n, order);
  j.value_ = value;
  return j;
}

Jet Jet::variable(Complex value, int index, int n, int order) {
  Jet j(n, order);
  j.value_ = value;
  if (order >= 1) j.grad_[index] = 1.0;
  return j;
}

Jet Jet::truncated(int order) const {
  Jet j = *this;
  if (order >= order_) return j;
  j.order_ = order;
  if (order < 2) j.hess_.resize(0, 0);
  if (order < 1) j.grad_.resize(0);
  return j;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  value_ += o.value_;
  if (order_ >= 1) grad_ += o.grad_;
  if (order_ >= 2) hess_ += o.hess_;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.order_ < order_) *this = truncated(o.order_);
  value_ -= o.value_;
  if (order_ >= 1) grad_ -= o.grad_;
  if (order_ >= 2) hess_ -= o.hess_;
  return *this;
}

Jet& Jet::operator*=(Complex s) {
  value_ *= s;
  if (order_ >= 1) grad_ *= s;
  if (order_ >= 2) hess_ *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(a.n_, std::min(a.order_, b.order_));
  out.value_ = a.value_ * b.value_;
  if (out.order_ >= 1) out.grad_ = a.grad_ * b.value_ + b.grad_ * a.value_;
  if (out.order_ >= 2) {
    out.hess_ = a.hess_ * b.value_ + b.hess_ * a.value_;
    out.hess_.noalias() += a.grad_ * b.grad_.transpose();
    out.hess_.noalias() += b.grad_ * a.grad_.transpose();
  }
  return out;
}

Jet chain(const Jet& a, Complex f, Complex df, Complex d2f) {
  Jet out(a.n_, a.order_);
  out.value_ = f;
  if (out.order_ >= 1) out.grad_ = df * a.grad_;
  if (out.order_ >= 2) {
    out.hess_ = df * a.hess_;
    out.hess_.noalias() += d2f * (a.grad_ * a.grad_.transpose());
  }
  return out;
}

Jet inverse(const Jet& a) {
  const Complex v = a.value();
  return chain(a, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }

Jet sqrt(const Jet& a) {
  const Complex r = std::sqrt(a.value());
  return chain(a, r, 0.5 / r, -0.25 / (r * a.value()));
}

Jet cos(const Jet& a) {
  const Complex c = std::cos(a.value());
  const Complex s = std::sin(a.value());
  return chain(a, c, -s, -c);
}

Jet sin(const Jet& a) {
  const Complex c = std::cos(a.value());
  const Complex s = std::sin(a.value());
  return chain(a, s, c, -s);
}

}  // namespace spinphase
