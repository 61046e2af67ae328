#pragma once

#include "loopfactor/elliptic.hpp"
#include "loopfactor/lie_core.hpp"

namespace loopfactor {

// Closed form r + C cot(x/2), or the partial Fourier sum with modes |n| <= cutoff.
struct RForm {
  bool closed = true;
  int cutoff = 0;

  static RForm Closed() { return {true, 0}; }
  static RForm Series(int n) { return {false, n}; }
};

// Closed: r + C cot(x/2). Series(N):
//   i sum_mu H^mu (x) H^mu (1 + 2 S_N) + sum_{alpha>0} i|alpha|^2 E^{-alpha} (x) E^alpha
//   + sum_alpha i|alpha|^2 E^{-alpha} (x) E^alpha S_N,   S_N = sum_{n=1}^N e^{-i n x},
// whose Abel sum is the closed form.
TensorOperator r_trig(const CartanWeylBasis& basis, double x, RForm form);

// The C cot(x/2) piece in the same form: closed C cot(x/2), series r_trig(series) - r.
TensorOperator cot_part(const CartanWeylBasis& basis, double x, RForm form);

// Cesaro mean of the series partial sums S_1..S_N.
TensorOperator r_trig_cesaro(const CartanWeylBasis& basis, double x, int N);

// sum_alpha (i|alpha|^2/2) coth(alpha(phi H)) E^{-alpha} (x) E^alpha
TensorOperator r_dynamical(const CartanWeylBasis& basis, const CartanPoint& a, double wall_radius = 1e-8);

// Elliptic dynamical r-matrix at alcove coordinates a^mu, level k, eps' < 0:
//   (eps'/pi) rho(sigma/2pi, tau) H (x) H + (eps'/pi) sum_alpha (|alpha|^2/2) sigma_{-y_alpha}(sigma/2pi, tau) E^alpha (x) E^{-alpha}
// with tau = -i k eps'/pi and y_alpha = -k eps' alpha(a H) / (pi i) = i alpha(phi H)/pi.
TensorOperator felder_r(const CartanWeylBasis& basis, const Eigen::VectorXd& alcove, double sigma,
                        double eps_prime, int level, const SeriesOptions& opts = {});

// sup |(1/eps') felder_r - (r_dynamical(phi) + C cot(sigma/2))| at fixed phi = -k eps' a.
double limit_deviation(const CartanWeylBasis& basis, const Eigen::VectorXd& phi, double sigma, double eps_prime,
                       int level, const SeriesOptions& opts = {});

// Operators on V (x) V (x) V acting on the factor pairs (1,2), (1,3), (2,3).
Eigen::MatrixXcd embed12(const TensorOperator& X, int n);
Eigen::MatrixXcd embed13(const TensorOperator& X, int n);
Eigen::MatrixXcd embed23(const TensorOperator& X, int n);

// max |[X12, X13] + [X12, X23] + [X13, X23]|
double cybe_residual(const TensorOperator& r12, const TensorOperator& r13, const TensorOperator& r23, int n);

}  // namespace loopfactor
