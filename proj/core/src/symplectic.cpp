#include "loopfactor/symplectic.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "loopfactor/error.hpp"

namespace loopfactor {

int chart_dimension(const AffineBasis& basis) {
  return 2 * basis.lie().rank() + 2 * int(basis.positive_roots().size());
}

double omega_coefficient(const CartanWeylBasis& lie, const AffineGenerator& root, const CartanPoint& a) {
  const double len = root.length_sq();
  if (root.cartan) return 1.0 / len;
  const double a2 = std::pow(a.power(lie, root.alpha), 2);
  return root.mode > 0 ? a2 / len : (a2 - 1.0) / len;
}

namespace {

void check_walls(const AffineBasis& basis, const CartanPoint& a, double wall_radius) {
  for (const auto& r : basis.positive_roots())
    if (r.mode == 0 && std::abs(omega_coefficient(basis.lie(), r, a)) < wall_radius)
      throw Error(ErrorKind::WallSingularity, "zero-mode block degenerates on a Weyl wall");
}

Eigen::MatrixXd block_matrix(const AffineBasis& basis, double phi_tau, const std::function<double(const AffineGenerator&)>& c) {
  const int r = basis.lie().rank();
  const int d = chart_dimension(basis);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
  for (int mu = 0; mu < r; ++mu) {
    M(mu, r + mu) = phi_tau;
    M(r + mu, mu) = -phi_tau;
  }
  int at = 2 * r;
  for (const auto& root : basis.positive_roots()) {
    const double v = c(root);
    M(at, at + 1) = v;
    M(at + 1, at) = -v;
    at += 2;
  }
  return M;
}

}  // namespace

Eigen::MatrixXd omega_infty_matrix(const AffineBasis& basis, const CartanPoint& a, double wall_radius) {
  check_walls(basis, a, wall_radius);
  return block_matrix(basis, 1.0, [&](const AffineGenerator& r) { return omega_coefficient(basis.lie(), r, a); });
}

Eigen::MatrixXd pi_infty_matrix(const AffineBasis& basis, const CartanPoint& a, double wall_radius) {
  check_walls(basis, a, wall_radius);
  return block_matrix(basis, -1.0, [&](const AffineGenerator& r) { return -pi_infty_coefficient(basis.lie(), r, a); });
}

namespace {

LoopElement exp_loop(const LoopElement& X, double s, const LoopOptions& opts) {
  if (X.degree() == 0) return LoopElement::constant(Matrix((s * X.mode(0)).exp()));
  return loop_exp(Complex(s) * X, opts);
}

Matrix cartan_matrix(const CartanWeylBasis& lie, const Eigen::VectorXd& phi) { return CartanPoint{phi}.exp(lie); }

Matrix cartan_algebra(const CartanWeylBasis& lie, const Eigen::VectorXd& v) {
  Matrix h = Matrix::Zero(lie.n(), lie.n());
  for (int mu = 0; mu < lie.rank(); ++mu) h += v(mu) * lie.H(mu);
  return h;
}

Eigen::VectorXd vector_derivative(const std::function<Eigen::VectorXd(double)>& f, double h) {
  return (4.0 * (f(h / 2) - f(-h / 2)) / h - (f(h) - f(-h)) / (2 * h)) / 3.0;
}

double wedge(const LoopElement& a1, const LoopElement& b1, const LoopElement& a2, const LoopElement& b2) {
  return 0.5 * (pairing_D(a1, b2) - pairing_D(a2, b1));
}

// Pieces of the chiral form along one curve: A = da a^{-1} = a^{-1} da, X = k^{-1} dk, Z = dXi Xi^{-1}.
struct ChiralPieces {
  LoopElement A, X, Z;
};

ChiralPieces chiral_pieces(const BracketContext& ctx, const ChiralCurve& c, bool dual) {
  const auto& lie = ctx.lie;
  const auto& fo = ctx.factor;
  const double h = ctx.fd_step;
  const LoopElement k0 = c.k(0);
  const Eigen::VectorXd phi0 = c.phi(0);
  ChiralPieces p;
  p.A = LoopElement::constant(cartan_algebra(lie, vector_derivative(c.phi, h)));
  p.X = inverse(k0, fo.loop) * curve_derivative(c.k, h, true);
  auto xi = [&](double s) {
    const Matrix a = cartan_matrix(lie, c.phi(s));
    if (!dual) return Xi_R(c.k(s) * a, fo);
    return Xi_L(a.inverse() * inverse(c.k(s), fo.loop), fo);
  };
  const LoopElement xi0 = xi(0);
  p.Z = curve_derivative(xi, h, true) * inverse(xi0, fo.loop);
  return p;
}

double chiral_form(const BracketContext& ctx, const ChiralCurve& v, const ChiralCurve& w, bool dual) {
  const Matrix a = cartan_matrix(ctx.lie, v.phi(0));
  const Matrix ai = a.inverse();
  const ChiralPieces pv = chiral_pieces(ctx, v, dual), pw = chiral_pieces(ctx, w, dual);
  const LoopElement Bv = pv.A + ai * pv.X * a;
  const LoopElement Bw = pw.A + ai * pw.X * a;
  return wedge(pv.A, pv.X, pw.A, pw.X) + wedge(pv.Z, Bv, pw.Z, Bw);
}

}  // namespace

ChiralCurve chiral_curve(const LoopElement& k, const CartanPoint& a, const LoopElement& X, const Eigen::VectorXd& dphi,
                         const LoopOptions& opts) {
  const Eigen::VectorXd phi = a.phi;
  return ChiralCurve{[k, X, opts](double s) { return (k * exp_loop(X, s, opts)).trimmed(opts.trim_tol); },
                     [phi, dphi](double s) { return Eigen::VectorXd(phi + s * dphi); }};
}

DoubleCurve double_curve(const LoopElement& K, const LoopElement& X, bool left, const LoopOptions& opts) {
  return [K, X, left, opts](double s) {
    const LoopElement e = exp_loop(X, s, opts);
    return (left ? K * e : e * K).trimmed(opts.trim_tol);
  };
}

double omega_infty(const BracketContext& ctx, const ChiralCurve& v, const ChiralCurve& w) {
  return chiral_form(ctx, v, w, false);
}

double omega_dual(const BracketContext& ctx, const ChiralCurve& v, const ChiralCurve& w) {
  return chiral_form(ctx, v, w, true);
}

double omega_S(const BracketContext& ctx, const DoubleCurve& v, const DoubleCurve& w) {
  const auto& fo = ctx.factor;
  const double h = ctx.fd_step;
  const LambdaXi base = lambda_xi(v(0), fo);
  if (base.verdict != DomainVerdict::Member) throw Error(ErrorKind::NotInDomain, "point outside S_infinity");
  const LoopElement iLL = inverse(base.lambda_L, fo.loop), iXL = inverse(base.xi_L, fo.loop);
  const LoopElement iLR = inverse(base.lambda_R, fo.loop), iXR = inverse(base.xi_R, fo.loop);
  struct Pieces {
    LoopElement lL, xL, lR, xR;
  };
  auto pieces = [&](const DoubleCurve& c) {
    Pieces p;
    p.lL = curve_derivative([&](double s) { return Lambda_L(c(s), fo); }, h, true) * iLL;
    p.xL = curve_derivative([&](double s) { return Xi_L(c(s), fo); }, h, true) * iXL;
    p.lR = curve_derivative([&](double s) { return Lambda_R(c(s), fo); }, h, true) * iLR;
    p.xR = curve_derivative([&](double s) { return Xi_R(c(s), fo); }, h, true) * iXR;
    return p;
  };
  const Pieces pv = pieces(v), pw = pieces(w);
  return wedge(pv.lL, pv.xL, pw.lL, pw.xL) + wedge(pv.lR, pv.xR, pw.lR, pw.xR);
}

LoopElement moment_field(const BivectorSpec& spec, const LoopElement& K, const LoopElement& xi, bool left,
                         const BracketContext& ctx) {
  const auto& fo = ctx.factor;
  const PhasePoint p = PhasePoint::on_double(K);
  const MatrixObservable F = MatrixObservable::of(left ? ObservableKind::LambdaL : ObservableKind::LambdaR);
  const LoopElement inv = inverse(evaluate(F, p, ctx), fo.loop);
  auto alpha = [&](const Direction& d) {
    return pairing_D(directional_derivative(F, p, d, DerivativeMethod::FiniteDifference, ctx) * inv, xi);
  };
  auto tangent = [&](const Direction& d) {
    switch (d.kind) {
      case DirectionKind::Left: return K * d.generator;
      case DirectionKind::Right: return d.generator * K;
      default: throw Error(ErrorKind::InvalidArgument, "moment field needs group directions");
    }
  };
  LoopElement V(K.n());
  for (const auto& term : spec.terms) {
    std::map<int, double> a;
    for (const auto& e : term.entries) {
      if (!a.count(e.i)) a.emplace(e.i, alpha(term.first.at(e.i)));
      if (a.at(e.i) != 0.0) V += Complex(e.c * a.at(e.i)) * tangent(term.second.at(e.j));
    }
  }
  return V.trimmed(fo.loop.trim_tol);
}

}  // namespace loopfactor
