#include <gtest/gtest.h>

#include <random>

#include "loopfactor/error.hpp"
#include "loopfactor/lie_core.hpp"

using namespace loopfactor;

namespace {

double maxabs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// Casimir of gl(n) minus its trace part, from the elementary matrices directly.
TensorOperator brute_force_casimir(int n) {
  TensorOperator c = TensorOperator::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix eij = Matrix::Zero(n, n), eji = Matrix::Zero(n, n);
      eij(i, j) = 1;
      eji(j, i) = 1;
      c += kron(eij, eji);
    }
  return c - TensorOperator::Identity(n * n, n * n) / double(n);
}

}  // namespace

TEST(LieCore, RejectsSmallN) {
  EXPECT_THROW(build_cartan_weyl(1), Error);
}

TEST(LieCore, SU2Example) {
  const auto b = build_cartan_weyl(2);
  Matrix h(2, 2);
  h << 1, 0, 0, -1;
  h /= std::sqrt(2.0);
  EXPECT_LT(maxabs(b.H(0) - h), 1e-15);
  const Root a{0, 1};
  EXPECT_NEAR(b.root_value(a, 0), std::sqrt(2.0), 1e-15);
  EXPECT_LT(maxabs(commutator(b.E(a), b.E(a.negated())) - std::sqrt(2.0) * b.H(0)), 1e-14);
  EXPECT_LT(maxabs(b.coroot(a) - commutator(b.E(a), b.E(a.negated()))), 1e-15);
}

class LieInvariants : public ::testing::TestWithParam<int> {};

TEST_P(LieInvariants, CartanWeylRelations) {
  const int n = GetParam();
  const auto b = build_cartan_weyl(n);
  EXPECT_EQ(int(b.roots().size()), n * (n - 1));
  for (int mu = 0; mu < b.rank(); ++mu)
    for (int nu = 0; nu < b.rank(); ++nu)
      EXPECT_NEAR(std::abs(pairing_K(b.H(mu), b.H(nu)) - Complex(mu == nu)), 0, 1e-12);
  for (const auto& a : b.roots()) {
    EXPECT_DOUBLE_EQ(b.length_sq(a), 2.0);
    for (int mu = 0; mu < b.rank(); ++mu)
      EXPECT_LT(maxabs(commutator(b.H(mu), b.E(a)) - b.root_value(a, mu) * b.E(a)), 1e-12);
    EXPECT_LT(maxabs(b.E(a).adjoint() - b.E(a.negated())), 1e-15);
    EXPECT_LT(maxabs(commutator(b.E(a), b.E(a.negated())) - b.coroot(a)), 1e-15);
    EXPECT_NEAR(std::abs(pairing_K(b.E(a), b.E(a.negated())) - 2.0 / b.length_sq(a)), 0, 1e-12);
    // |alpha|^2 from the Cartan components
    double len = 0;
    for (int mu = 0; mu < b.rank(); ++mu) len += b.root_value(a, mu) * b.root_value(a, mu);
    EXPECT_NEAR(len, 2.0, 1e-12);
  }
}

TEST_P(LieInvariants, CasimirAndR) {
  const int n = GetParam();
  const auto b = build_cartan_weyl(n);
  const TensorOperator C = casimir_tensor(b);
  const TensorOperator r = canonical_r_tensor(b);
  EXPECT_LT(maxabs(C - brute_force_casimir(n)), 1e-12);
  EXPECT_LT(maxabs(C - (swap_operator(n) - TensorOperator::Identity(n * n, n * n) / double(n))), 1e-12);
  EXPECT_LT(maxabs(swapped(C, n) - C), 1e-14);
  EXPECT_LT(maxabs(swapped(r, n) + r), 1e-14);
  EXPECT_LT(maxabs(r + swapped(r, n)), 1e-14);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  Matrix X(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) X(i, j) = Complex(nd(rng), nd(rng));
  X -= X.trace() / double(n) * Matrix::Identity(n, n);
  const Matrix I = Matrix::Identity(n, n);
  const TensorOperator ad = kron(X, I) + kron(I, X);
  EXPECT_LT(maxabs(C * ad - ad * C), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(SUn, LieInvariants, ::testing::Values(2, 3, 4));

TEST(LieCore, SU2RMatrixExample) {
  const auto b = build_cartan_weyl(2);
  Matrix e12 = Matrix::Zero(2, 2), e21 = Matrix::Zero(2, 2);
  e12(0, 1) = 1;
  e21(1, 0) = 1;
  const TensorOperator expected = Complex(0, 1) * (kron(e21, e12) - kron(e12, e21));
  EXPECT_LT(maxabs(canonical_r_tensor(b) - expected), 1e-15);
  const TensorOperator c2 = swap_operator(2) - 0.5 * TensorOperator::Identity(4, 4);
  EXPECT_LT(maxabs(casimir_tensor(b) - c2), 1e-15);
}

TEST(LieCore, PairingSigns) {
  const auto b = build_cartan_weyl(3);
  EXPECT_NEAR(pairing_K(b.H(0), b.H(0)).real(), 1.0, 1e-15);
  const Matrix ih = Complex(0, 1) * b.H(0);
  EXPECT_NEAR(pairing_K(ih, ih).real(), -1.0, 1e-15);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 10; ++t) {
    Matrix g(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = Complex(nd(rng), nd(rng));
    LieElement x{g - g.adjoint(), AlgebraTag::Compact};
    x.mat -= x.mat.trace() / 3.0 * Matrix::Identity(3, 3);
    EXPECT_LT(tag_violation(x), 1e-14);
    EXPECT_LT(pairing_K(x, x).real(), 0);
    EXPECT_NEAR(pairing_K(x, x).imag(), 0, 1e-12);
  }
  EXPECT_THROW(pairing_K(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), Error);
}

TEST(LieCore, CartanPointChambers) {
  const auto b = build_cartan_weyl(3);
  const CartanPoint p = cartan_log(b, Eigen::Vector3d(2.0, 1.0, 0.5));
  EXPECT_EQ(p.chamber(b), Chamber::Positive);
  EXPECT_EQ(p.inverse().chamber(b), Chamber::Negative);
  const Matrix a = p.exp(b);
  EXPECT_NEAR(a(0, 0).real(), 2.0, 1e-14);
  EXPECT_NEAR(a(2, 2).real(), 0.5, 1e-14);
  EXPECT_NEAR(p.power(b, Root{0, 1}), 2.0, 1e-14);
  const auto alc = p.alcove(-3.0, 2);
  EXPECT_LT((CartanPoint::from_alcove(alc, -3.0, 2).phi - p.phi).norm(), 1e-15);
}
