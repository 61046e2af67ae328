#include "loopfactor/dynamics.hpp"

#include <cmath>

#include "loopfactor/error.hpp"

namespace loopfactor {

namespace {

Matrix diag_phase(const CartanWeylBasis& basis, const Eigen::VectorXd& a, double t) {
  // exp(i t a^mu H^mu), H^mu diagonal
  Matrix h = Matrix::Zero(basis.n(), basis.n());
  for (int mu = 0; mu < basis.rank(); ++mu) h += a(mu) * basis.H(mu);
  Matrix out = Matrix::Zero(basis.n(), basis.n());
  for (int i = 0; i < basis.n(); ++i) out(i, i) = std::exp(Complex(0, t) * h(i, i).real());
  return out;
}

}  // namespace

bool ChiralPoint::valid(const CartanWeylBasis& basis, double tol) const {
  return membership(k, Subgroup::GR, tol).member && a.chamber(basis) == Chamber::Positive;
}

DomainCertificate certify(const LoopElement& k_dual, const CartanPoint& a_dual, const CartanWeylBasis& basis,
                          const FactorizationOptions& opts) {
  const Matrix ai = a_dual.inverse().exp(basis);
  const GRGstarResult r = factor_GR_Gstar(ai * inverse(k_dual, opts.loop), opts);
  return DomainCertificate{r.verdict, r.condition, r.detail};
}

DualChiralPoint make_dual_point(const LoopElement& k_dual, const CartanPoint& a_dual, const CartanWeylBasis& basis,
                                const FactorizationOptions& opts) {
  return DualChiralPoint{k_dual, a_dual, certify(k_dual, a_dual, basis, opts)};
}

DualChiralPoint duality_U(const ChiralPoint& p, const CartanWeylBasis& basis, const FactorizationOptions& opts) {
  const FactorPair f = factor_Gstar_GL(p.k * p.a.exp(basis), opts);
  return make_dual_point(f.v, p.a.inverse(), basis, opts);
}

ChiralPoint duality_V(const DualChiralPoint& p, const CartanWeylBasis& basis, const FactorizationOptions& opts) {
  if (!p.certificate.ok()) throw Error(ErrorKind::NotInDomain, "dual point outside S_infinity: " + p.certificate.detail);
  const Matrix ai = p.a.inverse().exp(basis);
  const GRGstarResult r = factor_GR_Gstar(ai * inverse(p.k, opts.loop), opts);
  if (!r.ok()) throw Error(ErrorKind::NotInDomain, "dual point outside S_infinity: " + r.detail);
  return ChiralPoint{inverse(r.pair.v, opts.loop).trimmed(opts.loop.trim_tol), p.a.inverse()};
}

DualChiralPoint evolve_infty(const DualChiralPoint& p, double tau, const CartanWeylBasis& basis,
                             const FactorizationOptions& opts) {
  return make_dual_point(p.k.rotated(tau), p.a, basis, opts);
}

Matrix MonodromicField::m(const CartanWeylBasis& basis, double sigma) const {
  return k(sigma) * diag_phase(basis, a, -sigma);
}

Matrix MonodromicField::monodromy(const CartanWeylBasis& basis) const { return diag_phase(basis, a, -2 * M_PI); }

MonodromicField evolve_q(const MonodromicField& f, double tau, const CartanWeylBasis& basis) {
  return MonodromicField{f.k.rotated(tau) * diag_phase(basis, f.a, tau), f.a};
}

MonodromicSamples to_samples(const MonodromicField& f, const CartanWeylBasis& basis, int M) {
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
  MonodromicSamples s{{}, f.a};
  for (int j = 0; j <= M; ++j) s.m.push_back(f.m(basis, 2 * M_PI * j / M));
  return s;
}

MonodromicField from_samples(const MonodromicSamples& s, const CartanWeylBasis& basis, double tol) {
  const int M = int(s.m.size()) - 1;
  if (M < 1) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
  const Matrix mono = diag_phase(basis, s.a, -2 * M_PI);
  const double scale = std::max(1.0, s.m[0].cwiseAbs().maxCoeff());
  const double quasi = (s.m[M] - s.m[0] * mono).cwiseAbs().maxCoeff();
  if (quasi > tol * scale) throw Error(ErrorKind::MonodromyMismatch, "m(2 pi) differs from m(0) M");
  std::vector<Matrix> k(M);
  for (int j = 0; j < M; ++j) k[j] = s.m[j] * diag_phase(basis, s.a, 2 * M_PI * j / M);
  double residue = 0;
  LoopElement loop = from_grid(k, M / 4, &residue);
  if (residue > tol * scale) throw Error(ErrorKind::MonodromyMismatch, "recovered loop is not a trigonometric polynomial");
  return MonodromicField{loop.trimmed(1e-15), s.a};
}

}  // namespace loopfactor
