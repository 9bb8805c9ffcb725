#include <gtest/gtest.h>

#include <random>

#include "spinphase/observables.hpp"
#include "test_support.hpp"

using namespace spinphase;

namespace {

// central difference of an observable along coordinate k, direction dir (1 or i)
Complex central_difference(const Observable& o, const PhasePoint& pt, int k, Complex dir, double h) {
  PhasePoint plus = pt, minus = pt;
  plus.coords[k] += h * dir;
  minus.coords[k] -= h * dir;
  return (o.value(plus) - o.value(minus)) / (2.0 * h);
}

CVector central_gradient_diff(const Observable& o, const PhasePoint& pt, int k, double h) {
  PhasePoint plus = pt, minus = pt;
  plus.coords[k] += h;
  minus.coords[k] -= h;
  return (o.gradient(plus) - o.gradient(minus)) / (2.0 * h);
}

std::vector<Observable> sample_observables(const ObservableSuite& s) {
  return {s.H, s.u[1], s.W[0], s.W[3], s.r[2], s.X[1], s.S[1][3], s.J[0][2], s.z[3], s.f_slope};
}

}  // namespace

TEST(Jet, ArithmeticMatchesAnalyticDerivatives) {
  const int n = 2;
  const Jet a = Jet::variable(Complex(0.7, 0.2), 0, n, 2);
  const Jet b = Jet::variable(Complex(-1.1, 0.4), 1, n, 2);
  const Jet f = a * b / (a + b) + sqrt(a) * cos(b);
  const Complex av = a.value(), bv = b.value();
  // hand-derived partials
  const Complex dfa = bv * bv / ((av + bv) * (av + bv)) + 0.5 / std::sqrt(av) * std::cos(bv);
  const Complex dfb = av * av / ((av + bv) * (av + bv)) - std::sqrt(av) * std::sin(bv);
  const Complex dfab = 2.0 * av * bv / std::pow(av + bv, 3) - 0.5 / std::sqrt(av) * std::sin(bv);
  EXPECT_LT(std::abs(f.grad()[0] - dfa), 1e-13);
  EXPECT_LT(std::abs(f.grad()[1] - dfb), 1e-13);
  EXPECT_LT(std::abs(f.hess()(0, 1) - dfab), 1e-13);
  EXPECT_LT(std::abs(f.hess()(1, 0) - dfab), 1e-13);
}

TEST(Jet, OrderDropsToLowestOperand) {
  const Jet a = Jet::variable(1.0, 0, 3, 2);
  const Jet b = Jet::variable(2.0, 1, 3, 1);
  EXPECT_EQ((a * b).order(), 1);
  EXPECT_EQ((a + b).order(), 1);
  EXPECT_EQ(inverse(a).order(), 2);
}

class ObservableDerivatives : public ::testing::TestWithParam<int> {};

TEST_P(ObservableDerivatives, GradientMatchesFiniteDifferences) {
  const RepPtr rep = build_rep(SpinLabel::from_twice(GetParam()));
  StateSampler sampler(rep, 101, {});
  const ObservableSuite suite = observables_suite(rep, 1.0);
  const double h = 1e-6;
  for (int trial = 0; trial < 5; ++trial) {
    const PhasePoint pt = to_point(sampler.sample(), *rep);
    for (const Observable& o : sample_observables(suite)) {
      const CVector grad = o.gradient(pt);
      const double scale = std::max(1.0, grad.cwiseAbs().maxCoeff());
      for (int k = 0; k < pt.layout.size(); ++k) {
        // holomorphic: d/dRe = grad, d/dIm = i grad
        const Complex fd_re = central_difference(o, pt, k, 1.0, h);
        const Complex fd_im = central_difference(o, pt, k, kI, h);
        EXPECT_LT(std::abs(fd_re - grad[k]) / scale, 1e-6) << o.label() << " coord " << k;
        EXPECT_LT(std::abs(fd_im - kI * grad[k]) / scale, 1e-6) << o.label() << " coord " << k;
      }
    }
  }
}

TEST_P(ObservableDerivatives, HessianMatchesFiniteDifferencesOfGradient) {
  const RepPtr rep = build_rep(SpinLabel::from_twice(GetParam()));
  StateSampler sampler(rep, 202, {});
  const ObservableSuite suite = observables_suite(rep, 0.8);
  const PhasePoint pt = to_point(sampler.sample(), *rep);
  for (const Observable& o : {suite.r[1], suite.W[2], suite.X[3], suite.H}) {
    const CMatrix hess = o.jet(pt, 2).hess();
    const double scale = std::max(1.0, hess.cwiseAbs().maxCoeff());
    for (int k = 0; k < pt.layout.size(); ++k) {
      const CVector fd = central_gradient_diff(o, pt, k, 1e-6);
      EXPECT_LT((fd - hess.col(k)).cwiseAbs().maxCoeff() / scale, 1e-6) << o.label() << " col " << k;
    }
  }
}

TEST_P(ObservableDerivatives, BracketGradientMatchesFiniteDifferences) {
  const RepPtr rep = build_rep(SpinLabel::from_twice(GetParam()));
  StateSampler sampler(rep, 303, {});
  const ObservableSuite suite = observables_suite(rep, 1.0);
  const Observable b = bracket(suite.r[1], suite.W[2]);
  EXPECT_EQ(b.max_order(), 1);
  const PhasePoint pt = to_point(sampler.sample(), *rep);
  const CVector grad = b.gradient(pt);
  const double scale = std::max(1.0, grad.cwiseAbs().maxCoeff());
  for (int k = 0; k < pt.layout.size(); ++k)
    EXPECT_LT(std::abs(central_difference(b, pt, k, 1.0, 1e-6) - grad[k]) / scale, 1e-6);
  EXPECT_THROW(b.jet(pt, 2), Error);
}

INSTANTIATE_TEST_SUITE_P(Supported, ObservableDerivatives, ::testing::Values(1, 2));
