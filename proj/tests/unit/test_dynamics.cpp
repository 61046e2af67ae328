#include <gtest/gtest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "loopfactor/dynamics.hpp"
#include "loopfactor/error.hpp"
#include "loopfactor/exchange.hpp"
#include "loopfactor/sampling.hpp"
#include "loopfactor/symplectic.hpp"

using namespace loopfactor;

namespace {

LoopElement combination(const std::vector<LoopElement>& fam, Sampler& s, int n, double size = 0.5) {
  LoopElement x(n);
  for (const auto& f : fam) x += Complex(s.uniform(-size, size)) * f;
  return x;
}

double vec_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Duality, TrivialPoints) {
  const CartanWeylBasis lie(2);
  const CartanPoint a{Eigen::VectorXd::Constant(1, 0.7)};
  const auto q = duality_U(ChiralPoint{LoopElement::identity(2), a}, lie);
  EXPECT_LT(mode_distance(q.k, LoopElement::identity(2)), 1e-12);
  EXPECT_EQ(vec_diff(q.a.phi, -a.phi), 0.0);
  EXPECT_TRUE(q.certificate.ok());
  const auto p = duality_V(make_dual_point(LoopElement::identity(2), a.inverse(), lie), lie);
  EXPECT_LT(mode_distance(p.k, LoopElement::identity(2)), 1e-12);
  EXPECT_LT(vec_diff(p.a.phi, a.phi), 1e-15);
}

class DualityRoundTrip : public ::testing::TestWithParam<int> {};

TEST_P(DualityRoundTrip, UAndVAreInverse) {
  const int n = GetParam();
  const CartanWeylBasis lie(n);
  Sampler s(lie, 9);
  for (int t = 0; t < 5; ++t) {
    const ChiralPoint p{s.random_GR(1, 2), s.random_chamber_point()};
    ASSERT_TRUE(p.valid(lie));
    const auto q = duality_U(p, lie);
    EXPECT_TRUE(q.certificate.ok());
    EXPECT_LT(membership(q.k, Subgroup::GL).worst, 1e-9);
    const auto p2 = duality_V(q, lie);
    EXPECT_LT(mode_distance(p2.k, p.k), 1e-9);
    EXPECT_LT(vec_diff(p2.a.phi, p.a.phi), 1e-12);
    const auto q2 = duality_U(p2, lie);
    EXPECT_LT(mode_distance(q2.k, q.k), 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(SUn, DualityRoundTrip, ::testing::Values(2, 3));

TEST(Duality, OutsideDomain) {
  // a~^{-1} k~^{-1} = diag(e^{i sigma}, e^{-i sigma}) has no G_R G* factorization
  const CartanWeylBasis lie(2);
  LoopElement kd(2);
  Matrix p = Matrix::Zero(2, 2), m = Matrix::Zero(2, 2);
  p(1, 1) = 1;
  m(0, 0) = 1;
  kd.set_mode(1, p);
  kd.set_mode(-1, m);
  const CartanPoint ad{Eigen::VectorXd::Zero(1)};
  const auto dp = make_dual_point(kd, ad, lie);
  EXPECT_FALSE(dp.certificate.ok());
  try {
    duality_V(dp, lie);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInDomain);
  }
}

TEST(Duality, PullbackOfDualForm) {
  const CartanWeylBasis lie(2);
  const AffineBasis b(lie, 2);
  BracketContext ctx(lie);
  Sampler s(lie, 9);
  for (int t = 0; t < 3; ++t) {
    const ChiralPoint p{s.random_GR(1, 2), s.random_chamber_point()};
    Eigen::VectorXd d1(1), d2(1);
    d1 << s.uniform(-1, 1);
    d2 << s.uniform(-1, 1);
    const auto cv = chiral_curve(p.k, p.a, combination(b.gR(), s, 2), d1);
    const auto cw = chiral_curve(p.k, p.a, combination(b.gR(), s, 2), d2);
    auto push = [&](const ChiralCurve& c) {
      return ChiralCurve{[&, c](double x) { return duality_U(ChiralPoint{c.k(x), CartanPoint{c.phi(x)}}, lie).k; },
                         [c](double x) { return Eigen::VectorXd(-c.phi(x)); }};
    };
    const double om = omega_infty(ctx, cv, cw);
    EXPECT_NEAR(omega_dual(ctx, push(cv), push(cw)), -om, 1e-6 * std::max(1.0, std::abs(om)));
  }
}

TEST(Evolution, InfiniteLimitFlow) {
  const CartanWeylBasis lie(2);
  Sampler s(lie, 14);
  const auto q = duality_U(ChiralPoint{s.random_GR(1, 2), s.random_chamber_point()}, lie);
  EXPECT_LT(mode_distance(evolve_infty(q, 0.0, lie).k, q.k), 1e-14);
  EXPECT_LT(mode_distance(evolve_infty(q, 2 * M_PI, lie).k, q.k), 1e-12);
  const auto a = evolve_infty(evolve_infty(q, 0.8, lie), 1.1, lie);
  EXPECT_LT(mode_distance(a.k, evolve_infty(q, 1.9, lie).k), 1e-12);
  for (int j = 0; j < 16; ++j) EXPECT_TRUE(evolve_infty(q, 2 * M_PI * j / 16, lie).certificate.ok()) << j;
}

TEST(Evolution, ExchangeRelationsAreInvariant) {
  const CartanWeylBasis lie(3);
  Sampler s(lie, 15);
  const auto q = duality_U(ChiralPoint{s.random_GR(1, 2), s.random_chamber_point()}, lie);
  const double tau = 0.9;
  const auto e = evolve_infty(q, tau, lie);
  for (auto kind : {ExchangeKind::DualKK, ExchangeKind::DualCartanK}) {
    ExchangeArgs x, y;
    x.cartan = y.cartan = q.a;
    x.sigma = 0.4;
    x.sigma_prime = 2.2;
    y.sigma = x.sigma + tau;
    y.sigma_prime = x.sigma_prime + tau;
    x.A = kind == ExchangeKind::DualKK ? q.k(x.sigma) : q.a.exp(lie);
    x.B = q.k(x.sigma_prime);
    y.A = kind == ExchangeKind::DualKK ? e.k(y.sigma) : e.a.exp(lie);
    y.B = e.k(y.sigma_prime);
    const auto lhs = exchange_rhs(lie, kind, x), rhs = exchange_rhs(lie, kind, y);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10) << to_string(kind);
  }
}

TEST(Evolution, FiniteLevelFlow) {
  const CartanWeylBasis lie(3);
  Sampler s(lie, 16);
  MonodromicField f{s.random_GR(1, 2), Eigen::Vector2d(0.21, 0.13)};
  EXPECT_LT(mode_distance(evolve_q(f, 0.0, lie).k, f.k), 1e-14);
  const auto a = evolve_q(evolve_q(f, 0.5, lie), 1.3, lie);
  const auto b = evolve_q(f, 1.8, lie);
  EXPECT_LT(mode_distance(a.k, b.k), 1e-12);
  EXPECT_LT((b.monodromy(lie) - f.monodromy(lie)).cwiseAbs().maxCoeff(), 1e-14);
  // the flow translates m: m_tau(sigma) = m(sigma - tau)
  for (double x : {0.1, 2.0, 4.5}) EXPECT_LT((b.m(lie, x) - f.m(lie, x - 1.8)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Monodromic, ConversionExamples) {
  const CartanWeylBasis lie(2);
  const Eigen::VectorXd a = Eigen::VectorXd::Constant(1, 0.3);
  const MonodromicField unit{LoopElement::identity(2), a};
  const Matrix M = unit.monodromy(lie);
  const Complex I(0, 1);
  EXPECT_LT((M - (-2 * M_PI * I * 0.3 * lie.H(0)).exp()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((unit.m(lie, 1.0) - (-I * 0.3 * lie.H(0)).exp()).cwiseAbs().maxCoeff(), 1e-14);
  const MonodromicField trivial{LoopElement::identity(2), Eigen::VectorXd::Zero(1)};
  EXPECT_LT((trivial.monodromy(lie) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Monodromic, SampleRoundTrip) {
  const CartanWeylBasis lie(3);
  Sampler s(lie, 17);
  const MonodromicField f{s.random_GR(2, 2), Eigen::Vector2d(0.17, 0.05)};
  const auto smp = to_samples(f, lie, 32);
  ASSERT_EQ(smp.m.size(), 33u);
  EXPECT_LT((smp.m.back() - smp.m.front() * f.monodromy(lie)).cwiseAbs().maxCoeff(), 1e-12);
  const auto g = from_samples(smp, lie);
  EXPECT_LT(mode_distance(g.k, f.k), 1e-10);

  auto bad = smp;
  bad.m.back() = bad.m.back() * 1.1;
  try {
    from_samples(bad, lie);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MonodromyMismatch);
  }
}
