#pragma once

#include <functional>
#include <vector>

#include "loopfactor/loop.hpp"
#include "loopfactor/rmatrix.hpp"

namespace loopfactor {

// Right-hand sides of the closed-form matrix Poisson brackets {A(sigma) (x) B(sigma')}.
enum class ExchangeKind {
  UpsilonUpsilon,        // Pi*: {Y (x) Y'}
  DagInvDagInv,          // Pi*: {Y^{+-1} (x) Y'^{+-1}}
  DagInvUpsilon,         // Pi*: {Y^{+-1} (x) Y'}
  DagInvUpsilonOp,       // Pi*_op: {Y^{+-1} (x) Y'}
  DagInvUpsilonLeftPL,   // left Poisson-Lie bracket: {Y^{+-1} (x) Y'}
  DagInvUpsilonRightPL,  // right Poisson-Lie bracket: {Y^{+-1} (x) Y'}
  LeftCurrent,           // {L (x) L'}
  RightCurrent,          // {R (x) R'}
  CartanKA,              // {a (x) k a}
  KAKA,                  // {k a (x) k' a}
  KADagKADag,            // {(ka)^{+-1} (x) (k'a)^{+-1}}
  KAKADag,               // {k a (x) (k'a)^{+-1}}
  LambdaLambda,          // {Lambda_L(ka) (x) Lambda_L(ka)'}
  KLambda,               // {k (x) Lambda_L(ka)'}
  CartanLambda,          // {a (x) Lambda_L(ka)'}
  DualCartanK,           // {a~ (x) k~}
  DualKK,                // {k~ (x) k~'}
  EllipticCartanK,       // finite q: {a~ (x) k~}
  EllipticKK,            // finite q: {k~ (x) k~'}
};

const char* to_string(ExchangeKind k);
std::vector<ExchangeKind> all_exchange_kinds();

struct ExchangeArgs {
  Matrix A, B;              // field values at sigma and sigma'
  double sigma = 0.0;
  double sigma_prime = 0.0;
  RForm form = RForm::Closed();
  CartanPoint cartan;       // a (chiral kinds) or a~ (dual kinds)
  Eigen::VectorXd alcove;   // elliptic kinds
  double eps_prime = -1.0;
  int level = 1;
};

TensorOperator exchange_rhs(const CartanWeylBasis& basis, ExchangeKind kind, const ExchangeArgs& args);

// (sigma, sigma') -> exchange_rhs with A = fa(sigma), B = fb(sigma').
std::function<TensorOperator(double, double)> exchange_function(const CartanWeylBasis& basis, ExchangeKind kind,
                                                                const LoopElement& fa, const LoopElement& fb,
                                                                const ExchangeArgs& base);

using ModeWindow = std::vector<std::vector<TensorOperator>>;

// Mode coefficients of f(sigma, sigma') = sum c[m][m'] e^{i m sigma + i m' sigma'} for |m|, |m'| <= W,
// from a G x G sample grid.
ModeWindow fourier_window(const std::function<TensorOperator(double, double)>& f, int W, int G = 64);

// The bivector also resolves the part of a bracket supported on sigma = sigma',
// c * 2 pi delta(sigma - sigma') C (A (x) B); the closed forms hold off the diagonal.
Complex contact_coefficient(ExchangeKind kind);
ModeWindow contact_window(const CartanWeylBasis& basis, ExchangeKind kind, const LoopElement& fa,
                          const LoopElement& fb, int W, int G = 64);
// Regular part plus contact part.
ModeWindow exchange_window(const CartanWeylBasis& basis, ExchangeKind kind, const LoopElement& fa,
                           const LoopElement& fb, const ExchangeArgs& base, int W, int G = 64);

// max |x - y| / max(|x|, |y|, floor) over the window entries.
double window_deviation(const ModeWindow& x, const ModeWindow& y, double floor = 1e-12);

struct PairBrackets {
  TensorOperator BC, BD, AC, AD;
};

// {AB (x) CD} from the four elementary brackets.
TensorOperator leibniz_combine(const PairBrackets& br, const Matrix& A, const Matrix& B, const Matrix& C,
                               const Matrix& D);
// {A (x) B^{-1}} = -(1 (x) B^{-1}) {A (x) B} (1 (x) B^{-1})
TensorOperator inverse_right(const TensorOperator& AB, const Matrix& B);
// {A^{-1} (x) B} = -(A^{-1} (x) 1) {A (x) B} (A^{-1} (x) 1)
TensorOperator inverse_left(const TensorOperator& AB, const Matrix& A);

}  // namespace loopfactor
