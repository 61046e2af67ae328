#include <gtest/gtest.h>

#include "loopfactor/error.hpp"
#include "loopfactor/factorization.hpp"
#include "loopfactor/sampling.hpp"

using namespace loopfactor;

namespace {

double off_diagonal(const Matrix& m) {
  double s = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j) s = std::max(s, std::abs(m(i, j)));
  return s;
}

// Wilson's Newton iteration for P = u u^dagger, u analytic with upper triangular zero mode.
LoopElement wilson_factor(const LoopElement& P, int iterations) {
  const int n = P.n();
  LoopElement u = LoopElement::identity(n);
  for (int it = 0; it < iterations; ++it) {
    const LoopElement ui = inverse(u);
    const LoopElement X = (ui * P * ui.adjoint()).trimmed(1e-15);
    LoopElement plus(n);
    for (const auto& [k, m] : X.modes())
      if (k > 0) plus.set_mode(k, m);
    Matrix z = X.mode(0) + Matrix::Identity(n, n);
    Matrix half = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      half(i, i) = 0.5 * z(i, i);
      for (int j = i + 1; j < n; ++j) half(i, j) = z(i, j);
    }
    plus.set_mode(0, half);
    u = (u * plus).trimmed(1e-15);
  }
  return u;
}

void expect_torus_equivalent(const LoopElement& x, const LoopElement& y, double tol) {
  const Matrix t = x.mode(0).inverse() * y.mode(0);
  EXPECT_LT(off_diagonal(t), tol);
  EXPECT_LT(mode_distance(x * t, y), tol);
}

}  // namespace

TEST(Iwasawa, Examples) {
  const auto b = build_cartan_weyl(2);
  Sampler s(b, 1);
  const LoopElement k = s.random_GL(2);
  auto r = iwasawa_pointwise(k);
  EXPECT_LT(mode_distance(r.an, LoopElement::identity(2)), 1e-12);
  EXPECT_LT(mode_distance(r.k, k), 1e-12);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 0.5;
  r = iwasawa_pointwise(LoopElement::constant(d));
  EXPECT_LT(mode_distance(r.k, LoopElement::identity(2)), 1e-14);
  EXPECT_LT(mode_distance(r.an, LoopElement::constant(d)), 1e-14);

  const LoopElement g = s.random_S(2, 2);
  r = iwasawa_pointwise(g);
  EXPECT_LT(r.residual, 1e-11);
  for (int j = 0; j < 16; ++j) {
    const double t = 2 * M_PI * j / 16;
    const Matrix an = r.an(t);
    EXPECT_LT(std::abs(an(1, 0)), 1e-10);
    EXPECT_LT(std::abs(an(0, 0).imag()), 1e-10);
    EXPECT_GT(an(0, 0).real(), 0);
    const Matrix kk = r.k(t);
    EXPECT_LT((kk * kk.adjoint() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(CartanConst, Examples) {
  auto c = cartan_const(Matrix::Identity(3, 3));
  EXPECT_LT((c.u_l - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((c.u_r - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_TRUE(c.degenerate);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1.0 / 3;
  c = cartan_const(d);
  EXPECT_NEAR(c.a(0), 3, 1e-14);
  EXPECT_NEAR(c.a(1), 1.0 / 3, 1e-14);
  EXPECT_LT(off_diagonal(c.u_l), 1e-14);
  EXPECT_LT(off_diagonal(c.u_r), 1e-14);
  EXPECT_FALSE(c.degenerate);

  const auto b = build_cartan_weyl(3);
  Sampler s(b, 2);
  for (int t = 0; t < 10; ++t) {
    const Matrix g = s.random_sl(0.8);
    c = cartan_const(g);
    EXPECT_LT(c.residual, 1e-12);
    Eigen::JacobiSVD<Matrix> svd(g);
    EXPECT_LT((c.a - svd.singularValues()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(std::abs(c.u_l.determinant() - Complex(1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(c.u_r.determinant() - Complex(1)), 0, 1e-12);
    EXPECT_NEAR(c.a.prod(), 1.0, 1e-12);
  }
  EXPECT_THROW(cartan_const(2.0 * Matrix::Identity(2, 2)), Error);
}

TEST(FactorGstarGL, TrivialCases) {
  const auto b = build_cartan_weyl(2);
  Sampler s(b, 3);
  const LoopElement k = s.random_GL(3);
  auto f = factor_Gstar_GL(k);
  EXPECT_LT(mode_distance(f.u, LoopElement::identity(2)), 1e-10);
  EXPECT_LT(mode_distance(f.v, k), 1e-10);
  const LoopElement u = s.random_Gstar(2, 3);
  f = factor_Gstar_GL(u);
  EXPECT_LT(mode_distance(f.u, u), 1e-10);
  EXPECT_LT(mode_distance(f.v, LoopElement::identity(2)), 1e-10);
}

TEST(FactorGstarGL, SpecExample) {
  const auto b = build_cartan_weyl(2);
  Sampler s(b, 4);
  LoopElement u = LoopElement::identity(2);
  u.set_mode(1, 0.2 * b.E(Root{0, 1}));
  const LoopElement v = s.random_GL(2);
  const auto f = factor_Gstar_GL(u * v);
  EXPECT_LT(mode_distance(f.u, u), 1e-8);
  EXPECT_LT(mode_distance(f.v, v), 1e-8);
}

TEST(FactorGstarGL, ConstructThenSplit) {
  for (int n : {2, 3}) {
    const auto b = build_cartan_weyl(n);
    Sampler s(b, 10 + n);
    for (int t = 0; t < 8; ++t) {
      const LoopElement u = s.random_Gstar(2, 3);
      const LoopElement v = s.random_GL(2);
      const auto f = factor_Gstar_GL(u * v);
      EXPECT_LT(f.residual, 1e-8);
      EXPECT_LT(mode_distance(f.u, u), 1e-8);
      EXPECT_LT(mode_distance(f.v, v), 1e-8);
      EXPECT_TRUE(membership(f.u, Subgroup::GStar, 1e-9).member);
      EXPECT_TRUE(membership(f.v, Subgroup::GL, 1e-9).member);
    }
  }
}

TEST(FactorGstarGL, UniqueAcrossGrids) {
  const auto b = build_cartan_weyl(3);
  Sampler s(b, 5);
  const LoopElement l = s.random_Gstar(2, 2) * s.random_GL(2);
  FactorizationOptions o1, o2;
  o2.loop.grid = 1024;
  o2.min_block = 16;
  const auto f1 = factor_Gstar_GL(l, o1);
  const auto f2 = factor_Gstar_GL(l, o2);
  EXPECT_LT(mode_distance(f1.u, f2.u), 1e-10);
  EXPECT_LT(mode_distance(f1.v, f2.v), 1e-10);
}

TEST(FactorGstarGL, AgreesWithWilsonIteration) {
  const auto b = build_cartan_weyl(2);
  Sampler s(b, 6);
  const LoopElement l = s.random_Gstar(2, 2) * s.random_GL(1);
  const LoopElement P = l * l.adjoint();
  const LoopElement w = wilson_factor(P, 30);
  const auto f = factor_Gstar_GL(l);
  EXPECT_LT(mode_distance(w, f.u), 1e-9);
}

TEST(FactorGRGstar, Examples) {
  const auto b = build_cartan_weyl(2);
  auto r = factor_GR_Gstar(LoopElement::identity(2));
  ASSERT_TRUE(r.ok());
  EXPECT_LT(mode_distance(r.pair.u, LoopElement::identity(2)), 1e-14);
  EXPECT_LT(mode_distance(r.pair.v, LoopElement::identity(2)), 1e-14);

  LoopElement v = LoopElement::identity(2), u = LoopElement::identity(2);
  v.set_mode(-1, 0.2 * b.E(Root{1, 0}));
  u.set_mode(1, 0.1 * b.E(Root{0, 1}));
  r = factor_GR_Gstar(v * u);
  ASSERT_TRUE(r.ok());
  EXPECT_LT(mode_distance(r.pair.u, u), 1e-8);
  EXPECT_LT(mode_distance(r.pair.v, v), 1e-8);

  Matrix rot(2, 2);
  rot << std::cos(M_PI / 4), -std::sin(M_PI / 4), std::sin(M_PI / 4), std::cos(M_PI / 4);
  r = factor_GR_Gstar(LoopElement::constant(rot));
  ASSERT_TRUE(r.ok());
  EXPECT_LT(mode_distance(r.pair.v, LoopElement::constant(rot)), 1e-12);

  LoopElement bad(2);
  Matrix p = Matrix::Zero(2, 2), m = Matrix::Zero(2, 2);
  p(0, 0) = 1;
  m(1, 1) = 1;
  bad.set_mode(1, p);
  bad.set_mode(-1, m);
  r = factor_GR_Gstar(bad);
  EXPECT_FALSE(r.ok());
  EXPECT_THROW(Lambda_R(bad), Error);
}

TEST(FactorGRGstar, ConstructThenSplit) {
  for (int n : {2, 3}) {
    const auto b = build_cartan_weyl(n);
    Sampler s(b, 20 + n);
    for (int t = 0; t < 8; ++t) {
      const LoopElement v = s.random_GR(2, 3);
      const LoopElement u = s.random_Gstar(2, 3);
      const auto r = factor_GR_Gstar(v * u);
      ASSERT_TRUE(r.ok()) << r.detail;
      EXPECT_LT(r.pair.residual, 1e-8);
      EXPECT_LT(mode_distance(r.pair.u, u), 1e-8);
      EXPECT_LT(mode_distance(r.pair.v, v), 1e-8);
      EXPECT_TRUE(membership(r.pair.v, Subgroup::GR, 1e-9).member);
    }
  }
}

TEST(LambdaXi, GstarAndEquivariance) {
  const auto b = build_cartan_weyl(3);
  Sampler s(b, 7);
  const LoopElement g = s.random_Gstar(2, 2);
  const auto lx = lambda_xi(g);
  ASSERT_EQ(lx.verdict, DomainVerdict::Member);
  EXPECT_LT(mode_distance(lx.lambda_L, g), 1e-10);
  EXPECT_LT(mode_distance(lx.xi_R, LoopElement::identity(3)), 1e-10);
  EXPECT_LT(mode_distance(lx.lambda_R, inverse(g)), 1e-10);
  EXPECT_LT(mode_distance(lx.xi_L, LoopElement::identity(3)), 1e-10);

  const LoopElement K = s.random_S(2, 2);
  const LoopElement vL = s.random_GL(2);
  EXPECT_LT(mode_distance(Lambda_L(K * vL), Lambda_L(K)), 1e-9);
  const LoopElement u = s.random_Gstar(1, 2);
  EXPECT_LT(mode_distance(Lambda_L(u * K), u * Lambda_L(K)), 1e-9);
}

TEST(InftyCartan, ConstantCartanElement) {
  const auto b = build_cartan_weyl(2);
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 2;
  a(1, 1) = 0.5;
  const auto t = infty_cartan(LoopElement::constant(a), b);
  EXPECT_NEAR(t.a_diagonal(0), 2, 1e-10);
  EXPECT_LT(off_diagonal(t.k_l.mode(0)), 1e-10);
  EXPECT_LE(t.k_l.max_mode(), 0);
  EXPECT_LT(t.residual, 1e-10);
}

TEST(InftyCartan, KTimesA) {
  const auto b = build_cartan_weyl(2);
  Sampler s(b, 8);
  const LoopElement k = s.random_GR(2, 2);
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 2;
  a(1, 1) = 0.5;
  const auto t = infty_cartan(k * a, b);
  EXPECT_LT(t.residual, 1e-7);
  EXPECT_NEAR(t.a_diagonal(0), 2, 1e-9);
  expect_torus_equivalent(k, t.k_l, 1e-8);
  expect_torus_equivalent(LoopElement::identity(2), t.k_r, 1e-8);
}

TEST(InftyCartan, RoundTripAndIdentities) {
  for (int n : {2, 3}) {
    const auto b = build_cartan_weyl(n);
    Sampler s(b, 30 + n);
    for (int trial = 0; trial < 3; ++trial) {
      const LoopElement kl = s.random_GR(2, 2), kr = s.random_GR(2, 2);
      const CartanPoint ap = s.random_chamber_point(0.3, 0.8);
      const Matrix a = ap.exp(b);
      const LoopElement sx = compose_phi(kl, a, kr);
      ASSERT_TRUE(factor_GR_Gstar(sx).ok());
      const auto t = infty_cartan(sx, b);
      EXPECT_LT(t.residual, 1e-7);
      EXPECT_LT((t.a.phi - ap.phi).cwiseAbs().maxCoeff(), 1e-8);
      expect_torus_equivalent(kl, t.k_l, 1e-7);
      expect_torus_equivalent(kr, t.k_r, 1e-7);

      // torus covariance
      Matrix tt = Matrix::Identity(n, n);
      for (int i = 0; i < n - 1; ++i) tt(i, i) = std::polar(1.0, s.uniform(0, 6.28));
      tt(n - 1, n - 1) = 1.0 / tt.diagonal().head(n - 1).prod();
      EXPECT_LT(mode_distance(compose_phi(kl * tt, a, kr * tt), sx), 1e-9);

      // Lambda_L(s) = Lambda_L(k_l a); Lambda_R(s) = Xi_R^{-1}(k_r a) a^{-1} k_r^{-1};
      // Xi_L(s) = k_l k_r^{-1}; Xi_R(s) = Xi_R^{-1}(k_r a) Xi_R(k_l a)
      const Matrix ainv = a.inverse();
      EXPECT_LT(mode_distance(Lambda_L(sx), Lambda_L(kl * a)), 1e-8);
      const LoopElement xr_r = Xi_R(kr * a), xr_l = Xi_R(kl * a);
      EXPECT_LT(mode_distance(Lambda_R(sx), inverse(xr_r) * ainv * inverse(kr)), 1e-8);
      EXPECT_LT(mode_distance(Xi_L(sx), kl * inverse(kr)), 1e-8);
      EXPECT_LT(mode_distance(Xi_R(sx), inverse(xr_r) * xr_l), 1e-8);
    }
  }
}
