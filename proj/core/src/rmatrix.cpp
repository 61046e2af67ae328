#include "loopfactor/rmatrix.hpp"

#include <cmath>

#include "loopfactor/error.hpp"

namespace loopfactor {

namespace {

TensorOperator cartan_sum(const CartanWeylBasis& b) {
  TensorOperator s = TensorOperator::Zero(b.n() * b.n(), b.n() * b.n());
  for (int mu = 0; mu < b.rank(); ++mu) s += kron(b.H(mu), b.H(mu));
  return s;
}

// sum over all roots of w(alpha) E^{-alpha} (x) E^alpha
template <class W>
TensorOperator root_sum(const CartanWeylBasis& b, W w) {
  TensorOperator s = TensorOperator::Zero(b.n() * b.n(), b.n() * b.n());
  for (const auto& a : b.roots()) s += w(a) * kron(b.E(a.negated()), b.E(a));
  return s;
}

Complex partial_geometric(double x, int N) {
  Complex s = 0;
  for (int n = 1; n <= N; ++n) s += std::polar(1.0, -n * x);
  return s;
}

}  // namespace

TensorOperator r_trig(const CartanWeylBasis& basis, double x, RForm form) {
  if (form.closed) return canonical_r_tensor(basis) + cot_part(basis, x, form);
  if (form.cutoff < 1) throw Error(ErrorKind::InvalidArgument, "series cutoff must be >= 1");
  const Complex I(0, 1);
  const Complex S = partial_geometric(x, form.cutoff);
  TensorOperator r = I * (1.0 + 2.0 * S) * cartan_sum(basis);
  r += root_sum(basis, [&](const Root& a) {
    return I * basis.length_sq(a) * ((a.positive() ? 1.0 : 0.0) + S);
  });
  return r;
}

TensorOperator cot_part(const CartanWeylBasis& basis, double x, RForm form) {
  if (form.closed) {
    const double s = std::sin(x / 2);
    if (std::abs(s) < 1e-12) throw Error(ErrorKind::CoincidentPoints, "cot((sigma - sigma')/2) at coincident points");
    return (std::cos(x / 2) / s) * casimir_tensor(basis);
  }
  return r_trig(basis, x, form) - canonical_r_tensor(basis);
}

TensorOperator r_trig_cesaro(const CartanWeylBasis& basis, double x, int N) {
  // mean_{K=1..N} S_K = sum_{n=1}^N (1 - (n-1)/N) e^{-i n x}
  const Complex I(0, 1);
  Complex S = 0;
  for (int n = 1; n <= N; ++n) S += (1.0 - double(n - 1) / N) * std::polar(1.0, -n * x);
  TensorOperator r = I * (1.0 + 2.0 * S) * cartan_sum(basis);
  r += root_sum(basis, [&](const Root& a) { return I * basis.length_sq(a) * ((a.positive() ? 1.0 : 0.0) + S); });
  return r;
}

TensorOperator r_dynamical(const CartanWeylBasis& basis, const CartanPoint& a, double wall_radius) {
  const Complex I(0, 1);
  return root_sum(basis, [&](const Root& alpha) -> Complex {
    const double v = basis.root_on(alpha, a.phi);
    if (std::abs(v) < wall_radius) throw Error(ErrorKind::WallSingularity, "a lies on a Weyl chamber wall");
    return I * basis.length_sq(alpha) / 2.0 / std::tanh(v);
  });
}

TensorOperator felder_r(const CartanWeylBasis& basis, const Eigen::VectorXd& alcove, double sigma,
                        double eps_prime, int level, const SeriesOptions& opts) {
  if (!(eps_prime < 0)) throw Error(ErrorKind::InvalidArgument, "felder_r requires eps' < 0");
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  const Complex I(0, 1);
  const Complex tau = -I * double(level) * eps_prime / M_PI;
  const double z = sigma / (2 * M_PI);
  const Eigen::VectorXd phi = -double(level) * eps_prime * alcove;
  TensorOperator r = (eps_prime / M_PI) * elliptic_rho(z, tau, opts) * cartan_sum(basis);
  for (const auto& a : basis.roots()) {
    const Complex y = I * basis.root_on(a, phi) / M_PI;
    const Complex s = elliptic_sigma(y, z, tau, opts);
    r += (eps_prime / M_PI) * (basis.length_sq(a) / 2.0) * s * kron(basis.E(a), basis.E(a.negated()));
  }
  return r;
}

double limit_deviation(const CartanWeylBasis& basis, const Eigen::VectorXd& phi, double sigma, double eps_prime,
                       int level, const SeriesOptions& opts) {
  const Eigen::VectorXd alcove = phi / (-double(level) * eps_prime);
  const TensorOperator lhs = felder_r(basis, alcove, sigma, eps_prime, level, opts) / eps_prime;
  const TensorOperator rhs = r_dynamical(basis, CartanPoint{phi}) + cot_part(basis, sigma, RForm::Closed());
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd embed12(const TensorOperator& X, int n) { return kron(X, Matrix::Identity(n, n)); }

Eigen::MatrixXcd embed23(const TensorOperator& X, int n) { return kron(Matrix::Identity(n, n), X); }

Eigen::MatrixXcd embed13(const TensorOperator& X, int n) {
  // conjugate X (x) 1 by the swap of factors 2 and 3
  const Eigen::MatrixXcd P23 = kron(Matrix::Identity(n, n), swap_operator(n));
  return P23 * embed12(X, n) * P23;
}

double cybe_residual(const TensorOperator& r12, const TensorOperator& r13, const TensorOperator& r23, int n) {
  const auto a = embed12(r12, n), b = embed13(r13, n), c = embed23(r23, n);
  const Eigen::MatrixXcd res = (a * b - b * a) + (a * c - c * a) + (b * c - c * b);
  return res.cwiseAbs().maxCoeff();
}

}  // namespace loopfactor
