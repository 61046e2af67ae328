#pragma once

#include <string>
#include <vector>

#include "loopfactor/loop.hpp"

namespace loopfactor {

// E_m^alpha (cartan = false) or H_m^mu (cartan = true).
struct AffineGenerator {
  bool cartan = false;
  Root alpha{};
  int mu = 0;
  int mode = 0;

  // m > 0, or m = 0 and alpha > 0.
  bool positive() const { return mode > 0 || (mode == 0 && !cartan && alpha.positive()); }
  double length_sq() const { return 2.0; }
  AffineGenerator negated() const;
  LoopElement loop(const CartanWeylBasis& basis) const;
  std::string label() const;
};

enum class Slot { T, B, C };

struct BasisEntry {
  Slot slot = Slot::T;
  int mu = 0;             // Slot::T
  AffineGenerator root;   // Slot::B / Slot::C, always positive
};

// The three dual families spanning the truncated double:
// g_L = (T_L, B_L, C_L), g* = (t, b, c), g_R = (T_R, B_R, C_R), with
// (t_i, T_L^j)_D = (t_i, T_R^j)_D = delta_i^j.
class AffineBasis {
 public:
  AffineBasis(const CartanWeylBasis& lie, int cutoff);

  const CartanWeylBasis& lie() const { return lie_; }
  int cutoff() const { return cutoff_; }
  int dimension() const { return int(entries_.size()); }
  const std::vector<BasisEntry>& entries() const { return entries_; }
  const std::vector<AffineGenerator>& positive_roots() const { return roots_; }

  const std::vector<LoopElement>& gL() const { return gL_; }
  const std::vector<LoopElement>& gstar() const { return gstar_; }
  const std::vector<LoopElement>& gR() const { return gR_; }

  // Index of the B (or C) entry of a positive affine root; -1 if absent.
  int index_of(Slot slot, const AffineGenerator& root) const;
  int cartan_index(int mu) const { return mu; }

 private:
  CartanWeylBasis lie_;
  int cutoff_;
  std::vector<AffineGenerator> roots_;
  std::vector<BasisEntry> entries_;
  std::vector<LoopElement> gL_, gstar_, gR_;
};

enum class Projector { PL, PR, PLStar, PRStar };

// p_L x = sum_i (x, t_i)_D T_L^i,  p_R x = sum_i (x, t_i)_D T_R^i,
// p_L* x = sum_i (x, T_L^i)_D t_i, p_R* x = sum_i (x, T_R^i)_D t_i.
LoopElement project(const AffineBasis& basis, const LoopElement& x, Projector which);

// Coefficients (x, y_i)_D against a family.
Eigen::VectorXd pair_with_family(const std::vector<LoopElement>& family, const LoopElement& x);

}  // namespace loopfactor
