#include <gtest/gtest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "loopfactor/error.hpp"
#include "loopfactor/oracle.hpp"

using namespace loopfactor;

namespace {

LoopElement combination(const std::vector<LoopElement>& fam, Sampler& s, int n, double size = 0.5) {
  LoopElement x(n);
  for (const auto& f : fam) x += Complex(s.uniform(-size, size)) * f;
  return x;
}

Matrix random_matrix(Sampler& s, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = s.gaussian();
  return m;
}

double max_diff(const TensorOperator& a, const TensorOperator& b) { return (a - b).cwiseAbs().maxCoeff(); }

double window_max(const ModeWindow& w) {
  double m = 0;
  for (const auto& row : w)
    for (const auto& x : row) m = std::max(m, x.cwiseAbs().maxCoeff());
  return m;
}

struct Registry {
  CartanWeylBasis lie{2};
  AffineBasis basis{lie, 6};
  BracketContext ctx{lie};
  std::vector<OracleCase> cases;

  Registry() {
    Sampler s(lie, 2024);
    cases = registry_cases(OraclePoints::sample(s));
  }
  static const Registry& get() {
    static Registry r;
    return r;
  }
};

}  // namespace

TEST(Observables, ClosedDerivativesMatchFiniteDifferences) {
  const CartanWeylBasis lie(3);
  Sampler s(lie, 11);
  const AffineBasis basis(lie, 2);
  BracketContext ctx(lie);
  const PhasePoint dbl = PhasePoint::on_double(s.random_S(1, 1, 0.2));
  const PhasePoint chi = PhasePoint::chiral(s.random_GR(1, 2), s.random_chamber_point());
  const std::vector<Direction> dirs = {Direction::left(combination(basis.gR(), s, 3)),
                                       Direction::right(combination(basis.gR(), s, 3)), Direction::phi(0),
                                       Direction::phi(1)};
  int checked = 0;
  for (ObservableKind k : {ObservableKind::Upsilon, ObservableKind::UpsilonDagInv, ObservableKind::CartanA,
                           ObservableKind::KA, ObservableKind::KADagInv, ObservableKind::K, ObservableKind::DualA}) {
    const auto F = MatrixObservable::of(k);
    const bool on_double = k == ObservableKind::Upsilon || k == ObservableKind::UpsilonDagInv;
    const PhasePoint& p = on_double ? dbl : chi;
    for (const auto& d : dirs) {
      if (on_double && d.kind == DirectionKind::Phi) continue;
      ASSERT_TRUE(has_closed_derivative(F, d));
      const auto a = directional_derivative(F, p, d, DerivativeMethod::Closed, ctx);
      const auto b = directional_derivative(F, p, d, DerivativeMethod::FiniteDifference, ctx);
      EXPECT_LT(mode_distance(a, b), 1e-8 * std::max(1.0, a.max_abs())) << to_string(k);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 24);
}

TEST(Observables, Errors) {
  const CartanWeylBasis lie(2);
  Sampler s(lie, 1);
  BracketContext ctx(lie);
  const PhasePoint dbl = PhasePoint::on_double(s.random_S(1, 1, 0.2));
  const auto X = Direction::left(LoopElement::constant(lie.H(0)));
  EXPECT_THROW(directional_derivative(MatrixObservable::of(ObservableKind::LambdaL), dbl, X,
                                      DerivativeMethod::Closed, ctx),
               Error);
  ctx.fd_step = 1e-9;
  try {
    directional_derivative(MatrixObservable::of(ObservableKind::LambdaL), dbl, X, DerivativeMethod::FiniteDifference,
                           ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
  // chiral observable on the double
  try {
    evaluate(MatrixObservable::of(ObservableKind::KA), dbl, ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Observables, CurveDerivativeOfExponential) {
  const CartanWeylBasis lie(2);
  const Matrix X = lie.E(Root{0, 1}) + lie.H(0);
  auto f = [&](double s) { return LoopElement::constant(Matrix(Complex(s) * X).exp()); };
  const auto d = curve_derivative(f, 1e-3, true);
  EXPECT_LT((d.mode(0) - X).cwiseAbs().maxCoeff(), 1e-11);
}

class RegistryOracle : public ::testing::TestWithParam<int> {};

TEST_P(RegistryOracle, MatchesClosedForm) {
  const auto& R = Registry::get();
  const auto& c = R.cases.at(GetParam());
  const auto r = run_oracle(c, R.basis, R.ctx, 3);
  EXPECT_LT(r.deviation, 1e-6) << c.name;
}

INSTANTIATE_TEST_SUITE_P(SU2, RegistryOracle, ::testing::Range(0, 19), [](const auto& info) {
  std::string s = Registry::get().cases.at(info.param).name;
  for (auto& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  return s;
});

TEST(Bracket, TrivialCases) {
  const CartanWeylBasis lie(2);
  const AffineBasis basis(lie, 3);
  BracketContext ctx(lie);
  Sampler s(lie, 3);
  const PhasePoint p = PhasePoint::on_double(s.random_S(1, 1, 0.2));
  const auto Y = MatrixObservable::of(ObservableKind::Upsilon);

  BivectorSpec empty{"empty", 3, {}};
  const auto b0 = bivector_bracket(empty, Y, Y, p, ctx);
  EXPECT_EQ(b0.size(), 0u);
  EXPECT_EQ(b0.eval(0.3, 1.1).cwiseAbs().maxCoeff(), 0.0);

  const auto C = MatrixObservable::constant(random_matrix(s, 2));
  const auto b1 = bivector_bracket(pi_D_infty(basis), C, Y, p, ctx);
  const auto b2 = bivector_bracket(pi_D_infty(basis), Y, C, p, ctx);
  EXPECT_EQ(b1.eval(0.3, 1.1).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(b2.eval(0.3, 1.1).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Bracket, SwapAntisymmetry) {
  const CartanWeylBasis lie(2);
  const AffineBasis basis(lie, 3);
  BracketContext ctx(lie);
  Sampler s(lie, 5);
  const auto pts = OraclePoints::sample(s);
  const auto Y = MatrixObservable::of(ObservableKind::Upsilon);
  const auto D = MatrixObservable::of(ObservableKind::UpsilonDagInv);
  const auto KA = MatrixObservable::of(ObservableKind::KA);
  const auto KD = MatrixObservable::of(ObservableKind::KADagInv);
  const auto A = MatrixObservable::of(ObservableKind::CartanA);
  struct Case {
    BivectorSpec spec;
    MatrixObservable F, G;
    PhasePoint p;
  };
  const PhasePoint g = PhasePoint::on_double(pts.g), K = PhasePoint::on_double(pts.K);
  const PhasePoint c = PhasePoint::chiral(pts.k, pts.a);
  const std::vector<Case> cases = {
      {pi_star(basis, pts.g), D, Y, g},
      {pi_star_op(basis, pts.g), Y, D, g},
      {pi_D_infty(basis), Y, D, K},
      {pi_infty(basis, pts.k, pts.a), KA, KD, c},
      {pi_infty(basis, pts.k, pts.a), A, KA, c},
  };
  for (const auto& cs : cases) {
    const auto fg = bivector_bracket(cs.spec, cs.F, cs.G, cs.p, ctx);
    const auto gf = bivector_bracket(cs.spec, cs.G, cs.F, cs.p, ctx);
    for (auto [x, y] : {std::pair{0.4, 2.0}, std::pair{-1.0, 0.7}, std::pair{3.0, 3.0}}) {
      const auto lhs = fg.eval(x, y);
      const auto rhs = swapped(gf.eval(y, x), 2);
      EXPECT_LT(max_diff(lhs, -rhs), 1e-9 * std::max(1.0, lhs.cwiseAbs().maxCoeff())) << cs.spec.name;
    }
  }
}

TEST(Bracket, LeftPoissonLieShadow) {
  // The affine bracket and the left Poisson-Lie bracket on G* differ by a term X (rt - r - iC).
  const CartanWeylBasis lie(2);
  const int N = 5, W = 2;
  const AffineBasis basis(lie, N);
  BracketContext ctx(lie);
  Sampler s(lie, 8);
  const LoopElement g = s.random_Gstar(1, 2);
  const PhasePoint p = PhasePoint::on_double(g);
  const auto Y = MatrixObservable::of(ObservableKind::Upsilon);
  const auto D = MatrixObservable::of(ObservableKind::UpsilonDagInv);
  const auto plain = bivector_bracket(pi_star(basis, g), D, Y, p, ctx).window(W);
  const auto left = bivector_bracket(pi_star_left(basis, g), D, Y, p, ctx).window(W);
  ModeWindow diff = plain;
  for (size_t i = 0; i < diff.size(); ++i)
    for (size_t j = 0; j < diff.size(); ++j) diff[i][j] -= left[i][j];

  const LoopElement fa = evaluate(D, p, ctx), fb = evaluate(Y, p, ctx);
  ExchangeArgs args;
  args.form = RForm::Series(N);
  const auto a = exchange_window(lie, ExchangeKind::DagInvUpsilon, fa, fb, args, W);
  const auto b = exchange_window(lie, ExchangeKind::DagInvUpsilonLeftPL, fa, fb, args, W);
  ModeWindow expect = a;
  for (size_t i = 0; i < expect.size(); ++i)
    for (size_t j = 0; j < expect.size(); ++j) expect[i][j] -= b[i][j];
  EXPECT_GT(window_max(diff), 1e-2);
  EXPECT_LT(window_deviation(diff, expect, sup_norm(fa) * sup_norm(fb)), 1e-9);

  // pattern check on the closed forms
  const Complex I(0, 1);
  args.form = RForm::Closed();
  args.A = fa(0.3);
  args.B = fb(1.9);
  args.sigma = 0.3;
  args.sigma_prime = 1.9;
  const auto X = kron(args.A, args.B);
  const auto rt = r_trig(lie, 0.3 - 1.9, RForm::Closed());
  const TensorOperator shadow = X * (rt - canonical_r_tensor(lie) - I * casimir_tensor(lie));
  EXPECT_LT(max_diff(exchange_rhs(lie, ExchangeKind::DagInvUpsilon, args) -
                         exchange_rhs(lie, ExchangeKind::DagInvUpsilonLeftPL, args),
                     shadow),
            1e-12);
}

TEST(Bracket, KappaTwistApproachesInfiniteLimit) {
  const CartanWeylBasis lie(2);
  const AffineBasis basis(lie, 3);
  BracketContext ctx(lie);
  Sampler s(lie, 4);
  const PhasePoint p = PhasePoint::on_double(s.random_S(1, 1, 0.2));
  const auto Y = MatrixObservable::of(ObservableKind::Upsilon);
  const auto D = MatrixObservable::of(ObservableKind::UpsilonDagInv);
  // holomorphic observables do not see the difference at all
  const auto yy = bivector_bracket(pi_D_infty(basis), Y, Y, p, ctx).window(2);
  const auto yyk =
      bivector_bracket(build_bivector(BivectorKind::PiDKappa, basis, p, KappaTwist{0.5, 1}), Y, Y, p, ctx).window(2);
  EXPECT_LT(window_deviation(yyk, yy, 1.0), 1e-12);

  const auto ref = bivector_bracket(pi_D_infty(basis), D, Y, p, ctx).window(2);
  std::vector<double> dev;
  for (double eps : {0.5, 1.0, 2.0, 4.0}) {
    const auto w =
        bivector_bracket(build_bivector(BivectorKind::PiDKappa, basis, p, KappaTwist{eps, 1}), D, Y, p, ctx).window(2);
    dev.push_back(window_deviation(w, ref, 1.0));
  }
  for (size_t i = 1; i < dev.size(); ++i) EXPECT_LT(dev[i], dev[i - 1]);
  EXPECT_GT(dev[0], 1e-3);
  EXPECT_LT(dev.back(), 1e-3);
}

TEST(Exchange, ClosedFormExamples) {
  const CartanWeylBasis lie(2);
  Sampler s(lie, 6);
  ExchangeArgs args;
  args.A = random_matrix(s, 2);
  args.B = random_matrix(s, 2);
  args.sigma = 0.2;
  args.sigma_prime = 1.4;
  args.cartan = CartanPoint{Eigen::VectorXd::Constant(1, 0.5)};
  EXPECT_EQ(exchange_rhs(lie, ExchangeKind::CartanLambda, args).cwiseAbs().maxCoeff(), 0.0);
  // at the identity the current bracket reduces to r-matrix commutators
  args.A = args.B = Matrix::Identity(2, 2);
  const auto rt = r_trig(lie, 0.2 - 1.4, RForm::Closed());
  EXPECT_LT(exchange_rhs(lie, ExchangeKind::UpsilonUpsilon, args).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(max_diff(exchange_rhs(lie, ExchangeKind::KLambda, args), rt), 1e-14);

  args.sigma_prime = args.sigma;
  try {
    exchange_rhs(lie, ExchangeKind::UpsilonUpsilon, args);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CoincidentPoints);
  }
  args.sigma_prime = 1.4;
  args.cartan = CartanPoint{Eigen::VectorXd::Zero(1)};
  try {
    exchange_rhs(lie, ExchangeKind::KAKA, args);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WallSingularity);
  }
}

TEST(Exchange, EllipticReducesToDual) {
  for (int n : {2, 3}) {
    const CartanWeylBasis lie(n);
    Sampler s(lie, 12);
    const CartanPoint ad = s.random_chamber_point().inverse();
    const double eps = -12.0;
    ExchangeArgs args;
    args.A = random_matrix(s, n);
    args.B = random_matrix(s, n);
    args.sigma = 0.9;
    args.sigma_prime = -0.6;
    args.cartan = ad;
    args.eps_prime = eps;
    args.level = 1;
    // phi = -k eps' a with phi the exponent of a~^{-1}
    args.alcove = ad.inverse().phi / (-eps);
    const TensorOperator ell = exchange_rhs(lie, ExchangeKind::EllipticKK, args) / eps;
    const auto lim = exchange_rhs(lie, ExchangeKind::DualKK, args);
    EXPECT_LT(max_diff(ell, lim), 1e-5 * std::max(1.0, lim.cwiseAbs().maxCoeff())) << n;
    const TensorOperator ellc = exchange_rhs(lie, ExchangeKind::EllipticCartanK, args) / eps;
    EXPECT_LT(max_diff(ellc, exchange_rhs(lie, ExchangeKind::DualCartanK, args)), 1e-12);
  }
}

TEST(Exchange, FourierWindowOfMonomial) {
  const CartanWeylBasis lie(2);
  Sampler s(lie, 2);
  const TensorOperator M = kron(random_matrix(s, 2), random_matrix(s, 2));
  const Complex I(0, 1);
  auto f = [&](double x, double y) -> TensorOperator { return M * std::exp(I * (x - 2.0 * y)); };
  const int W = 3;
  const auto w = fourier_window(f, W, 32);
  for (int m = -W; m <= W; ++m)
    for (int mp = -W; mp <= W; ++mp) {
      const double expect = (m == 1 && mp == -2) ? 0.0 : w[m + W][mp + W].cwiseAbs().maxCoeff();
      if (m == 1 && mp == -2)
        EXPECT_LT(max_diff(w[m + W][mp + W], M), 1e-13);
      else
        EXPECT_LT(expect, 1e-13);
    }
}

TEST(Leibniz, PassthroughAndZeros) {
  const CartanWeylBasis lie(2);
  Sampler s(lie, 7);
  const int n = 2;
  const Matrix Id = Matrix::Identity(n, n);
  const TensorOperator Z = TensorOperator::Zero(n * n, n * n);
  PairBrackets br{Z, Z, Z, kron(random_matrix(s, n), random_matrix(s, n))};
  EXPECT_LT(max_diff(leibniz_combine(br, random_matrix(s, n), Id, Id, random_matrix(s, n)), br.AD), 1e-14);
  // the constant factors drop out: {A (x) D} passes through when B = C = 1
  const Matrix A = random_matrix(s, n), D = random_matrix(s, n);
  EXPECT_LT(max_diff(leibniz_combine(br, A, Id, Id, D), br.AD), 1e-14);
  PairBrackets zero{Z, Z, Z, Z};
  EXPECT_EQ(leibniz_combine(zero, A, A, D, D).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Leibniz, EntrywiseExpansion) {
  for (int n : {2, 3}) {
    const CartanWeylBasis lie(n);
    Sampler s(lie, 100 + n);
    const Matrix A = random_matrix(s, n), B = random_matrix(s, n), C = random_matrix(s, n), D = random_matrix(s, n);
    auto rand_t = [&]() {
      TensorOperator t(n * n, n * n);
      for (int i = 0; i < n * n; ++i)
        for (int j = 0; j < n * n; ++j) t(i, j) = s.gaussian();
      return t;
    };
    const PairBrackets br{rand_t(), rand_t(), rand_t(), rand_t()};
    // {X^{ab}, Y^{cd}} = T((a, c), (b, d))
    auto el = [&](const TensorOperator& T, int a, int b, int c, int d) { return T(a * n + c, b * n + d); };
    TensorOperator oracle = TensorOperator::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Complex v = 0;
            for (int p = 0; p < n; ++p)
              for (int q = 0; q < n; ++q) {
                v += A(i, p) * C(k, q) * el(br.BD, p, j, q, l);
                v += A(i, p) * D(q, l) * el(br.BC, p, j, k, q);
                v += B(p, j) * C(k, q) * el(br.AD, i, p, q, l);
                v += B(p, j) * D(q, l) * el(br.AC, i, p, k, q);
              }
            oracle(i * n + k, j * n + l) = v;
          }
    EXPECT_LT(max_diff(leibniz_combine(br, A, B, C, D), oracle), 1e-12) << n;
  }
}

TEST(Leibniz, InverseRules) {
  // a bracket of the form sum_i a_i (x) b_i is a derivation in each slot
  const int n = 3;
  const CartanWeylBasis lie(n);
  Sampler s(lie, 9);
  Matrix A = random_matrix(s, n) + 4.0 * Matrix::Identity(n, n);
  Matrix B = random_matrix(s, n) + 4.0 * Matrix::Identity(n, n);
  TensorOperator AB = TensorOperator::Zero(n * n, n * n), AiB = AB, ABi = AB;
  const Matrix Ai = A.inverse(), Bi = B.inverse();
  for (int t = 0; t < 4; ++t) {
    const Matrix a = random_matrix(s, n), b = random_matrix(s, n);
    AB += kron(a, b);
    AiB += kron(-Ai * a * Ai, b);
    ABi += kron(a, -Bi * b * Bi);
  }
  EXPECT_LT(max_diff(inverse_right(AB, B), ABi), 1e-12);
  EXPECT_LT(max_diff(inverse_left(AB, A), AiB), 1e-12);
}
