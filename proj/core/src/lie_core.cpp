#include "loopfactor/lie_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loopfactor/error.hpp"

namespace loopfactor {

CartanWeylBasis::CartanWeylBasis(int n) : n_(n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "su(n) requires n >= 2");
  for (int mu = 1; mu < n; ++mu) {
    Matrix h = Matrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(double(mu) * (mu + 1));
    for (int i = 0; i < mu; ++i) h(i, i) = norm;
    h(mu, mu) = -mu * norm;
    H_.push_back(std::move(h));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) positive_.push_back(Root{i, j});
  roots_ = positive_;
  for (const auto& r : positive_) roots_.push_back(r.negated());
}

Matrix CartanWeylBasis::E(const Root& alpha) const {
  if (alpha.i == alpha.j || alpha.i < 0 || alpha.j < 0 || alpha.i >= n_ || alpha.j >= n_)
    throw Error(ErrorKind::InvalidArgument, "not a root of su(n)");
  Matrix e = Matrix::Zero(n_, n_);
  e(alpha.i, alpha.j) = 1.0;
  return e;
}

Matrix CartanWeylBasis::coroot(const Root& alpha) const {
  Matrix c = Matrix::Zero(n_, n_);
  c(alpha.i, alpha.i) = 1.0;
  c(alpha.j, alpha.j) = -1.0;
  return c;
}

double CartanWeylBasis::root_value(const Root& alpha, int mu) const {
  const Matrix& h = H_.at(mu);
  return h(alpha.i, alpha.i).real() - h(alpha.j, alpha.j).real();
}

double CartanWeylBasis::root_on(const Root& alpha, const Eigen::VectorXd& phi) const {
  if (phi.size() != rank()) throw Error(ErrorKind::DimensionMismatch, "Cartan vector has wrong rank");
  double s = 0;
  for (int mu = 0; mu < rank(); ++mu) s += phi(mu) * root_value(alpha, mu);
  return s;
}

Matrix CartanWeylBasis::cartan_element(const Eigen::VectorXd& x) const {
  if (x.size() != rank()) throw Error(ErrorKind::DimensionMismatch, "Cartan vector has wrong rank");
  Matrix m = Matrix::Zero(n_, n_);
  for (int mu = 0; mu < rank(); ++mu) m += x(mu) * H_[mu];
  return m;
}

CartanWeylBasis build_cartan_weyl(int n) { return CartanWeylBasis(n); }

double tag_violation(const LieElement& x) {
  const Matrix& m = x.mat;
  const double tr = std::abs(m.trace());
  switch (x.tag) {
    case AlgebraTag::Compact:
      return std::max(tr, (m + m.adjoint()).cwiseAbs().maxCoeff());
    case AlgebraTag::Complexified:
      return tr;
    case AlgebraTag::AN: {
      double v = tr;
      for (int i = 0; i < m.rows(); ++i) {
        v = std::max(v, std::abs(m(i, i).imag()));
        for (int j = 0; j < i; ++j) v = std::max(v, std::abs(m(i, j)));
      }
      return v;
    }
    case AlgebraTag::Cartan: {
      double v = tr;
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          if (i != j) v = std::max(v, std::abs(m(i, j)));
      return v;
    }
  }
  return std::numeric_limits<double>::infinity();
}

Complex pairing_K(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols())
    throw Error(ErrorKind::DimensionMismatch, "pairing_K operands differ in size");
  return (A.transpose().cwiseProduct(B)).sum();
}

Complex pairing_K(const LieElement& A, const LieElement& B) { return pairing_K(A.mat, B.mat); }

TensorOperator kron(const Matrix& A, const Matrix& B) {
  const int n = int(A.rows());
  const int m = int(B.rows());
  TensorOperator T(n * m, A.cols() * B.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < A.cols(); ++j) T.block(i * m, j * B.cols(), m, B.cols()) = A(i, j) * B;
  return T;
}

TensorOperator swap_operator(int n) {
  TensorOperator P = TensorOperator::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) P(i * n + k, k * n + i) = 1.0;
  return P;
}

TensorOperator swapped(const TensorOperator& X, int n) {
  const TensorOperator P = swap_operator(n);
  return P * X * P;
}

TensorOperator casimir_tensor(const CartanWeylBasis& basis) {
  const int n = basis.n();
  TensorOperator C = TensorOperator::Zero(n * n, n * n);
  for (int mu = 0; mu < basis.rank(); ++mu) C += kron(basis.H(mu), basis.H(mu));
  for (const auto& a : basis.positive_roots()) {
    const Matrix Ep = basis.E(a), Em = basis.E(a.negated());
    C += (basis.length_sq(a) / 2.0) * (kron(Em, Ep) + kron(Ep, Em));
  }
  return C;
}

TensorOperator canonical_r_tensor(const CartanWeylBasis& basis) {
  const int n = basis.n();
  TensorOperator r = TensorOperator::Zero(n * n, n * n);
  const Complex I(0, 1);
  for (const auto& a : basis.positive_roots()) {
    const Matrix Ep = basis.E(a), Em = basis.E(a.negated());
    r += (I * basis.length_sq(a) / 2.0) * (kron(Em, Ep) - kron(Ep, Em));
  }
  return r;
}

Matrix CartanPoint::exp(const CartanWeylBasis& basis) const {
  const Matrix h = basis.cartan_element(phi);
  Matrix a = Matrix::Zero(basis.n(), basis.n());
  for (int i = 0; i < basis.n(); ++i) a(i, i) = std::exp(h(i, i).real());
  return a;
}

double CartanPoint::power(const CartanWeylBasis& basis, const Root& alpha) const {
  return std::exp(basis.root_on(alpha, phi));
}

Chamber CartanPoint::chamber(const CartanWeylBasis& basis) const {
  bool pos = true, neg = true;
  for (int i = 0; i + 1 < basis.n(); ++i) {
    const double v = basis.root_on(Root{i, i + 1}, phi);
    pos = pos && v > 0;
    neg = neg && v < 0;
  }
  return pos ? Chamber::Positive : neg ? Chamber::Negative : Chamber::None;
}

double CartanPoint::wall_distance(const CartanWeylBasis& basis) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& a : basis.positive_roots()) d = std::min(d, std::abs(basis.root_on(a, phi)));
  return d;
}

CartanPoint CartanPoint::from_alcove(const Eigen::VectorXd& alcove, double eps_prime, int level) {
  return CartanPoint{-double(level) * eps_prime * alcove};
}

Eigen::VectorXd CartanPoint::alcove(double eps_prime, int level) const {
  return phi / (-double(level) * eps_prime);
}

CartanPoint cartan_log(const CartanWeylBasis& basis, const Eigen::VectorXd& diagonal) {
  if (diagonal.size() != basis.n()) throw Error(ErrorKind::DimensionMismatch, "diagonal has wrong size");
  Eigen::VectorXd logd(basis.n());
  for (int i = 0; i < basis.n(); ++i) {
    if (!(diagonal(i) > 0)) throw Error(ErrorKind::InvalidArgument, "Cartan element must be positive");
    logd(i) = std::log(diagonal(i));
  }
  Eigen::VectorXd phi(basis.rank());
  for (int mu = 0; mu < basis.rank(); ++mu) {
    double s = 0;
    for (int i = 0; i < basis.n(); ++i) s += basis.H(mu)(i, i).real() * logd(i);
    phi(mu) = s;
  }
  return CartanPoint{phi};
}

}  // namespace loopfactor
