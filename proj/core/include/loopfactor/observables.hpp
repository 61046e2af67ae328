#pragma once

#include <functional>
#include <string>

#include "loopfactor/factorization.hpp"

namespace loopfactor {

struct BracketContext {
  CartanWeylBasis lie;
  FactorizationOptions factor;
  double fd_step = 1e-4;
  bool richardson = true;

  explicit BracketContext(const CartanWeylBasis& b) : lie(b) {}
};

// A point of the double (K) or of M_infinity = G_R x A_+ (k, phi).
enum class PhaseSpace { Double, Chiral };

struct PhasePoint {
  PhaseSpace space = PhaseSpace::Double;
  LoopElement g;
  Eigen::VectorXd phi;

  static PhasePoint on_double(const LoopElement& K) { return {PhaseSpace::Double, K, {}}; }
  static PhasePoint chiral(const LoopElement& k, const CartanPoint& a) { return {PhaseSpace::Chiral, k, a.phi}; }
  CartanPoint cartan() const { return CartanPoint{phi}; }
};

// Left: g -> g e^{sX}; Right: g -> e^{sX} g; Phi: phi^mu -> phi^mu + s.
enum class DirectionKind { Left, Right, Phi };

struct Direction {
  DirectionKind kind = DirectionKind::Left;
  LoopElement generator;
  int phi_index = -1;

  static Direction left(const LoopElement& X) { return {DirectionKind::Left, X, -1}; }
  static Direction right(const LoopElement& X) { return {DirectionKind::Right, X, -1}; }
  static Direction phi(int mu) { return {DirectionKind::Phi, LoopElement(), mu}; }
};

PhasePoint move(const PhasePoint& p, const Direction& d, double s, const LoopOptions& opts = {});

enum class ObservableKind {
  // on the double
  Upsilon,        // K
  UpsilonDagInv,  // K^{dagger -1}
  LeftCurrent,    // Lambda_L(K) Lambda_L(K)^dagger
  RightCurrent,   // Lambda_R(K)^dagger Lambda_R(K)
  LambdaL,
  LambdaR,
  XiL,
  XiR,
  // on M_infinity
  CartanA,       // a
  KA,            // k a
  KADagInv,      // (k a)^{dagger -1}
  K,             // k
  LambdaLofKA,   // Lambda_L(k a)
  DualK,         // Xi_R^{-1}(k a)
  DualA,         // a^{-1}
  // anywhere
  Constant,
};

struct MatrixObservable {
  ObservableKind kind = ObservableKind::Upsilon;
  Matrix value;  // ObservableKind::Constant only

  static MatrixObservable of(ObservableKind k) { return {k, {}}; }
  static MatrixObservable constant(const Matrix& m) { return {ObservableKind::Constant, m}; }
};

const char* to_string(ObservableKind k);

LoopElement evaluate(const MatrixObservable& F, const PhasePoint& p, const BracketContext& ctx);

enum class DerivativeMethod { Closed, FiniteDifference, Auto };

bool has_closed_derivative(const MatrixObservable& F, const Direction& d);

// d/ds F(move(p, d, s)) at s = 0. Finite differences are central with step ctx.fd_step,
// Richardson-extrapolated over (h, h/2) when ctx.richardson is set.
LoopElement directional_derivative(const MatrixObservable& F, const PhasePoint& p, const Direction& d,
                                   DerivativeMethod method, const BracketContext& ctx);

// Central difference of an arbitrary loop-valued map along a one-parameter curve.
LoopElement curve_derivative(const std::function<LoopElement(double)>& f, double h, bool richardson);

}  // namespace loopfactor
