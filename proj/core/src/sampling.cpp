#include "loopfactor/sampling.hpp"

#include <cmath>

namespace loopfactor {

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

int Sampler::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Complex Sampler::gaussian() {
  std::normal_distribution<double> nd(0.0, 1.0);
  const double re = nd(rng_);
  const double im = nd(rng_);
  return {re, im};
}

Complex Sampler::unit_disc() {
  const double r = std::sqrt(uniform(0.0, 1.0));
  return std::polar(r, uniform(0.0, 2 * M_PI));
}

Root Sampler::random_root() {
  const auto& roots = basis_.roots();
  return roots[uniform_int(0, int(roots.size()) - 1)];
}

Matrix Sampler::random_su() {
  const int n = basis_.n();
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix R = qr.matrixQR();
  for (int i = 0; i < n; ++i) Q.col(i) *= R(i, i) / std::abs(R(i, i));
  const Complex det = Q.determinant();
  return Q * std::pow(det, -1.0 / n);
}

Matrix Sampler::random_an(double spread) {
  const int n = basis_.n();
  Matrix a = Matrix::Zero(n, n);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = uniform(-spread, spread);
  x.array() -= x.mean();
  for (int i = 0; i < n; ++i) {
    a(i, i) = std::exp(x(i));
    for (int j = i + 1; j < n; ++j) a(i, j) = spread * gaussian();
  }
  return a;
}

Matrix Sampler::random_sl(double spread) { return random_su() * random_an(spread) * random_su(); }

Matrix Sampler::random_compact_algebra() {
  const int n = basis_.n();
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gaussian();
  Matrix x = g - g.adjoint();
  x -= (x.trace() / double(n)) * Matrix::Identity(n, n);
  return 0.5 * x;
}

LoopElement Sampler::random_GR(int degree, int factors, double coef) {
  const int n = basis_.n();
  LoopElement g = LoopElement::constant(random_su());
  for (int f = 0; f < factors; ++f) {
    LoopElement step = LoopElement::identity(n);
    step.set_mode(-uniform_int(1, degree), coef * unit_disc() * basis_.E(random_root()));
    g = g * step;
  }
  return g;
}

LoopElement Sampler::random_Gstar(int degree, int factors, double coef) {
  const int n = basis_.n();
  LoopElement g = LoopElement::constant(random_an());
  for (int f = 0; f < factors; ++f) {
    LoopElement step = LoopElement::identity(n);
    step.set_mode(uniform_int(1, degree), coef * unit_disc() * basis_.E(random_root()));
    g = g * step;
  }
  return g;
}

LoopElement Sampler::random_GL(int factors) {
  const int n = basis_.n();
  LoopElement g = LoopElement::constant(random_su());
  for (int f = 0; f < factors; ++f) {
    const Root r = random_root();
    LoopElement d(n);
    Matrix d0 = Matrix::Identity(n, n);
    d0(r.i, r.i) = 0;
    d0(r.j, r.j) = 0;
    Matrix dp = Matrix::Zero(n, n), dm = Matrix::Zero(n, n);
    dp(r.i, r.i) = 1;
    dm(r.j, r.j) = 1;
    d.set_mode(0, d0);
    d.set_mode(1, dp);
    d.set_mode(-1, dm);
    const Matrix u = random_su();
    g = g * (u * d * u.adjoint());
  }
  return g;
}

LoopElement Sampler::random_S(int degree, int factors, double coef) {
  const LoopElement v = random_GR(degree, factors, coef);
  return v * random_Gstar(degree, factors, coef);
}

LoopElement Sampler::random_algebra_loop(int degree, double size) {
  const int n = basis_.n();
  LoopElement x(n);
  for (int k = -degree; k <= degree; ++k) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = size * gaussian();
    m -= (m.trace() / double(n)) * Matrix::Identity(n, n);
    x.set_mode(k, m);
  }
  return x;
}

LoopElement Sampler::random_compact_loop(int degree, double size) {
  const LoopElement x = random_algebra_loop(degree, size);
  return 0.5 * (x - x.adjoint());
}

CartanPoint Sampler::random_chamber_point(double min_gap, double max_gap) {
  const int n = basis_.n();
  Eigen::VectorXd logd(n);
  logd(0) = 0;
  for (int i = 1; i < n; ++i) logd(i) = logd(i - 1) - uniform(min_gap, max_gap);
  logd.array() -= logd.mean();
  Eigen::VectorXd d = logd.array().exp();
  return cartan_log(basis_, d);
}

}  // namespace loopfactor
