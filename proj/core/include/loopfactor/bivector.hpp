#pragma once

#include <string>
#include <vector>

#include "loopfactor/affine_basis.hpp"
#include "loopfactor/observables.hpp"

namespace loopfactor {

struct BivectorEntry {
  int i = 0;
  int j = 0;
  double c = 0.0;
};

// sum_{(i,j,c)} c * first[i] (x) second[j]
struct BivectorTerm {
  std::vector<Direction> first;
  std::vector<Direction> second;
  std::vector<BivectorEntry> entries;
};

struct BivectorSpec {
  std::string name;
  int cutoff = 0;
  std::vector<BivectorTerm> terms;
};

enum class BivectorKind { PiDInfty, PiDKappa, PiStar, PiStarOp, PiStarLeft, PiStarRight, PiR, PiInfty };

const char* to_string(BivectorKind k);

struct KappaTwist {
  double eps = 1.0;
  int level = 1;
};

// Pi_D^infty = L_*(T_L^i (x) t_i) - R_*(t_i (x) T_R^i); point independent.
BivectorSpec pi_D_infty(const AffineBasis& basis);
// Pi_D^kappa = L_*(T_L^i (x) t_i) - R_* kappa_*(t_i (x) T_L^i).
BivectorSpec pi_D_kappa(const AffineBasis& basis, KappaTwist twist);
// Affine Poisson bivectors on G* at the point g (right-trivialized on the t_i).
BivectorSpec pi_star(const AffineBasis& basis, const LoopElement& g, const LoopOptions& opts = {});
BivectorSpec pi_star_op(const AffineBasis& basis, const LoopElement& g, const LoopOptions& opts = {});
// Poisson-Lie structures on G* from the same formula with both labels L (resp. R).
BivectorSpec pi_star_left(const AffineBasis& basis, const LoopElement& g, const LoopOptions& opts = {});
BivectorSpec pi_star_right(const AffineBasis& basis, const LoopElement& g, const LoopOptions& opts = {});
// Poisson-Lie bivector of G_R at k, right-trivialized on T_R^i.
BivectorSpec pi_R(const AffineBasis& basis, const LoopElement& k, const LoopOptions& opts = {});
// -Pi_{G_R} + L_*T^mu ^ d/dphi^mu - sum c_alpha L_*(B_R ^ C_R) on M_infinity at (k, a).
BivectorSpec pi_infty(const AffineBasis& basis, const LoopElement& k, const CartanPoint& a,
                      const LoopOptions& opts = {});

BivectorSpec build_bivector(BivectorKind kind, const AffineBasis& basis, const PhasePoint& p,
                            KappaTwist twist = {}, const LoopOptions& opts = {});

// Coefficient c_alpha of L_*(B_R ^ C_R) in Pi^infty (with the minus sign dropped).
double pi_infty_coefficient(const CartanWeylBasis& lie, const AffineGenerator& root, const CartanPoint& a,
                            double wall_radius = 1e-12);

// {F (x) G}(sigma, sigma') = sum_i dF_i(sigma) (x) H_i(sigma').
class BracketField {
 public:
  BracketField(int n) : n_(n) {}

  void add(const LoopElement& dF, const LoopElement& H);
  int n() const { return n_; }
  size_t size() const { return dF_.size(); }

  TensorOperator eval(double sigma, double sigma_prime) const;
  // Mode coefficients B[m][m'] for |m|, |m'| <= W, stored at [m + W][m' + W].
  std::vector<std::vector<TensorOperator>> window(int W) const;
  // Largest mode index present on either side.
  int spread() const;

 private:
  int n_;
  std::vector<LoopElement> dF_, H_;
};

BracketField bivector_bracket(const BivectorSpec& spec, const MatrixObservable& F, const MatrixObservable& G,
                              const PhasePoint& p, const BracketContext& ctx,
                              DerivativeMethod method = DerivativeMethod::Auto);

}  // namespace loopfactor
