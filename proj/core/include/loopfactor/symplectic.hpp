#pragma once

#include <functional>

#include "loopfactor/affine_basis.hpp"
#include "loopfactor/bivector.hpp"
#include "loopfactor/observables.hpp"

namespace loopfactor {

// Chart at (e_R, a) in M_infinity: phi^mu, tau_mu, then (beta, gamma) per positive affine root
// in AffineBasis::positive_roots() order.
int chart_dimension(const AffineBasis& basis);

// Coefficient of d beta ^ d gamma: a^{2 alpha}/|alpha|^2 (mode > 0, a^{2 alpha} = 1 for Cartan-type roots),
// (a^{2 alpha} - 1)/|alpha|^2 (mode 0).
double omega_coefficient(const CartanWeylBasis& lie, const AffineGenerator& root, const CartanPoint& a);

Eigen::MatrixXd omega_infty_matrix(const AffineBasis& basis, const CartanPoint& a, double wall_radius = 1e-12);
Eigen::MatrixXd pi_infty_matrix(const AffineBasis& basis, const CartanPoint& a, double wall_radius = 1e-12);

// One-parameter curves through a point; tangent vectors are their velocities at s = 0.
struct ChiralCurve {
  std::function<LoopElement(double)> k;
  std::function<Eigen::VectorXd(double)> phi;
};
using DoubleCurve = std::function<LoopElement(double)>;

// s -> (k e^{sX}, phi + s dphi)
ChiralCurve chiral_curve(const LoopElement& k, const CartanPoint& a, const LoopElement& X, const Eigen::VectorXd& dphi,
                         const LoopOptions& opts = {});
// s -> K e^{sX} (left) or e^{sX} K (right)
DoubleCurve double_curve(const LoopElement& K, const LoopElement& X, bool left, const LoopOptions& opts = {});

// Omega_infinity at (k, a) on the velocities of v and w.
double omega_infty(const BracketContext& ctx, const ChiralCurve& v, const ChiralCurve& w);
// The dual form on G_L x A_- at (k~, a~), built from Xi_L(a~^{-1} k~^{-1}).
double omega_dual(const BracketContext& ctx, const ChiralCurve& v, const ChiralCurve& w);
// The groupoid form on S_infinity.
double omega_S(const BracketContext& ctx, const DoubleCurve& v, const DoubleCurve& w);

// Vector field Pi_D^infty(Lambda^* rho_xi, .) at K as a tangent loop dK.
// left = true: Lambda_L, expected -xi K for xi in g_R; left = false: Lambda_R, expected K xi for xi in g_L.
LoopElement moment_field(const BivectorSpec& spec, const LoopElement& K, const LoopElement& xi, bool left,
                         const BracketContext& ctx);

}  // namespace loopfactor
