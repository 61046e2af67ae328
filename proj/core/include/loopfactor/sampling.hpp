#pragma once

#include <cstdint>
#include <random>

#include "loopfactor/loop.hpp"

namespace loopfactor {

// Seeded generators for group and algebra elements used by tests and the suite.
class Sampler {
 public:
  Sampler(const CartanWeylBasis& basis, std::uint64_t seed) : basis_(basis), rng_(seed) {}

  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);
  Complex gaussian();
  Complex unit_disc();

  Matrix random_su();
  // Upper triangular, positive diagonal, det 1.
  Matrix random_an(double spread = 0.5);
  Matrix random_sl(double spread = 0.5);
  Matrix random_compact_algebra();

  // u_const * prod (I + c E^alpha e^{-i m sigma}), m in [1, degree].
  LoopElement random_GR(int degree, int factors, double coef = 0.3);
  // an_const * prod (I + c E^alpha e^{i m sigma}).
  LoopElement random_Gstar(int degree, int factors, double coef = 0.3);
  // Products of conjugated diagonal loops g diag(.., e^{i sigma}, .., e^{-i sigma}, ..) g^dagger.
  LoopElement random_GL(int factors);
  // Element of S_infinity: v_R u.
  LoopElement random_S(int degree, int factors, double coef = 0.3);
  // sl(n)-valued loop with modes in [-degree, degree].
  LoopElement random_algebra_loop(int degree, double size = 1.0);
  // Lie(L K): pointwise anti-Hermitian.
  LoopElement random_compact_loop(int degree, double size = 1.0);

  // Point of A_+ with simple-root values in [min_gap, max_gap].
  CartanPoint random_chamber_point(double min_gap = 0.3, double max_gap = 1.0);

  std::mt19937_64& engine() { return rng_; }

 private:
  Root random_root();

  CartanWeylBasis basis_;
  std::mt19937_64 rng_;
};

}  // namespace loopfactor
