#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "loopfactor/lie_core.hpp"

namespace loopfactor {

struct LoopOptions {
  int grid = 256;                 // minimum number of sample points
  int max_grid = 8192;            // adaptive refinement stops here
  double truncation_tol = 1e-10;  // relative residue allowed beyond the output cutoff
  double trim_tol = 1e-15;        // relative size below which modes are dropped
};

// gamma(sigma) = sum_k gamma_k e^{i k sigma}, gamma_k n x n complex.
class LoopElement {
 public:
  LoopElement() = default;
  explicit LoopElement(int n) : n_(n) {}

  static LoopElement constant(const Matrix& m);
  static LoopElement identity(int n);
  static LoopElement monomial(const Matrix& m, int k);

  int n() const { return n_; }
  bool is_zero() const { return modes_.empty(); }
  int min_mode() const { return modes_.empty() ? 0 : modes_.begin()->first; }
  int max_mode() const { return modes_.empty() ? 0 : modes_.rbegin()->first; }
  int degree() const;

  Matrix mode(int k) const;
  const std::map<int, Matrix>& modes() const { return modes_; }
  void set_mode(int k, const Matrix& m);
  void add_to_mode(int k, const Matrix& m);

  Matrix operator()(double sigma) const;

  // Pointwise conjugate transpose: gamma_k -> gamma_{-k}^dagger.
  LoopElement adjoint() const;
  // sigma -> -sigma
  LoopElement reflected() const;
  // gamma(sigma - tau)
  LoopElement rotated(double tau) const;
  LoopElement trimmed(double rel_tol) const;
  // Keeps modes with lo <= k <= hi.
  LoopElement band(int lo, int hi) const;

  LoopElement& operator+=(const LoopElement& o);
  LoopElement& operator-=(const LoopElement& o);
  LoopElement& operator*=(Complex c);

  // Largest entry modulus over all modes.
  double max_abs() const;

 private:
  int n_ = 0;
  std::map<int, Matrix> modes_;
};

LoopElement operator+(LoopElement a, const LoopElement& b);
LoopElement operator-(LoopElement a, const LoopElement& b);
LoopElement operator*(Complex c, LoopElement a);
LoopElement operator*(const Matrix& m, const LoopElement& a);
LoopElement operator*(const LoopElement& a, const Matrix& m);
// Exact product (no truncation) computed on a grid large enough to avoid aliasing.
LoopElement operator*(const LoopElement& a, const LoopElement& b);

// Largest entry modulus of a - b over all modes.
double mode_distance(const LoopElement& a, const LoopElement& b);
// Largest entry modulus of a(sigma) over M grid points.
double sup_norm(const LoopElement& a, int M = 256);

int power_of_two_at_least(int m);
int grid_for_degree(int degree, const LoopOptions& opts);

std::vector<Matrix> to_grid(const LoopElement& a, int M);
// Keeps |k| <= cutoff; *residue receives the largest entry modulus among the discarded modes.
LoopElement from_grid(const std::vector<Matrix>& samples, int cutoff, double* residue = nullptr);

// Applies f to the sample values of the inputs, refining the grid until the outputs are resolved.
std::vector<LoopElement> pointwise_map(
    const std::vector<const LoopElement*>& inputs,
    const std::function<std::vector<Matrix>(const std::vector<Matrix>&)>& f, int outputs,
    const LoopOptions& opts = {});

LoopElement loop_multiply(const LoopElement& a, const LoopElement& b, int out_cutoff,
                          const LoopOptions& opts = {});
LoopElement loop_inverse(const LoopElement& a, int out_cutoff, const LoopOptions& opts = {});
// Inverse with adaptive grid refinement.
LoopElement inverse(const LoopElement& a, const LoopOptions& opts = {});
// Pointwise exponential.
LoopElement loop_exp(const LoopElement& x, const LoopOptions& opts = {});

// sum_k Tr(x_k y_{-k})
Complex pairing_loop(const LoopElement& x, const LoopElement& y);
// Im (x|y)
double pairing_D(const LoopElement& x, const LoopElement& y);

// Mode m scaled by exp(-m k eps).
LoopElement kappa_twist(const LoopElement& x, double eps, int k);

enum class Subgroup { GStar, GL, GR, D };

struct Membership {
  bool member = false;
  double worst = 0;  // worst violation found
  std::string detail;
};

Membership membership(const LoopElement& x, Subgroup which, double tol = 1e-10,
                      const LoopOptions& opts = {});

const char* to_string(Subgroup s);

}  // namespace loopfactor
