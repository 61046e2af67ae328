#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace loopfactor {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
// Element of End(V) (x) End(V), row index (i,k) = i*n+k, column (j,l) = j*n+l.
using TensorOperator = Eigen::MatrixXcd;

// alpha = e_i - e_j; positive iff i < j.
struct Root {
  int i = 0;
  int j = 1;

  bool positive() const { return i < j; }
  Root negated() const { return Root{j, i}; }
  bool operator==(const Root& o) const { return i == o.i && j == o.j; }
  bool operator<(const Root& o) const { return i != o.i ? i < o.i : j < o.j; }
};

class CartanWeylBasis {
 public:
  explicit CartanWeylBasis(int n);

  int n() const { return n_; }
  int rank() const { return n_ - 1; }

  const Matrix& H(int mu) const { return H_.at(mu); }
  // All roots, positive ones first, each block in lexicographic (i, j) order.
  const std::vector<Root>& roots() const { return roots_; }
  const std::vector<Root>& positive_roots() const { return positive_; }

  Matrix E(const Root& alpha) const;
  Matrix coroot(const Root& alpha) const;
  double length_sq(const Root&) const { return 2.0; }
  // alpha(H^mu)
  double root_value(const Root& alpha, int mu) const;
  // alpha(sum_mu phi^mu H^mu)
  double root_on(const Root& alpha, const Eigen::VectorXd& phi) const;
  // sum_mu x^mu H^mu
  Matrix cartan_element(const Eigen::VectorXd& x) const;

 private:
  int n_;
  std::vector<Matrix> H_;
  std::vector<Root> roots_;
  std::vector<Root> positive_;
};

CartanWeylBasis build_cartan_weyl(int n);

enum class AlgebraTag { Compact, Complexified, AN, Cartan };

struct LieElement {
  Matrix mat;
  AlgebraTag tag = AlgebraTag::Complexified;
};

// Worst deviation of `x` from the tag's defining conditions.
double tag_violation(const LieElement& x);

Complex pairing_K(const Matrix& A, const Matrix& B);
Complex pairing_K(const LieElement& A, const LieElement& B);

TensorOperator kron(const Matrix& A, const Matrix& B);
TensorOperator swap_operator(int n);
// P X P
TensorOperator swapped(const TensorOperator& X, int n);

TensorOperator casimir_tensor(const CartanWeylBasis& basis);
TensorOperator canonical_r_tensor(const CartanWeylBasis& basis);

enum class Chamber { Positive, Negative, None };

// a = exp(phi^mu H^mu); alcove coordinates a^mu satisfy phi^mu = -k eps' a^mu
// in the finite-q chart.
struct CartanPoint {
  Eigen::VectorXd phi;

  Matrix exp(const CartanWeylBasis& basis) const;
  // a^alpha = exp(alpha(phi H))
  double power(const CartanWeylBasis& basis, const Root& alpha) const;
  Chamber chamber(const CartanWeylBasis& basis) const;
  // Smallest |alpha(phi H)| over all roots.
  double wall_distance(const CartanWeylBasis& basis) const;
  CartanPoint inverse() const { return CartanPoint{-phi}; }

  static CartanPoint from_alcove(const Eigen::VectorXd& alcove, double eps_prime, int level);
  Eigen::VectorXd alcove(double eps_prime, int level) const;
};

// Recovers phi from a positive diagonal det-1 matrix.
CartanPoint cartan_log(const CartanWeylBasis& basis, const Eigen::VectorXd& diagonal);

}  // namespace loopfactor
