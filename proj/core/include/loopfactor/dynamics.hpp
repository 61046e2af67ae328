#pragma once

#include <string>
#include <vector>

#include "loopfactor/factorization.hpp"

namespace loopfactor {

struct ChiralPoint {
  LoopElement k;  // G_R
  CartanPoint a;  // A_+

  // Membership of k in G_R and of a in the open positive chamber.
  bool valid(const CartanWeylBasis& basis, double tol = 1e-9) const;
};

struct DomainCertificate {
  DomainVerdict verdict = DomainVerdict::NotInDomain;
  double condition = 0;
  std::string detail;

  bool ok() const { return verdict == DomainVerdict::Member; }
};

struct DualChiralPoint {
  LoopElement k;  // G_L
  CartanPoint a;  // A_-
  DomainCertificate certificate;
};

// Verdict for a~^{-1} k~^{-1} in S_infinity.
DomainCertificate certify(const LoopElement& k_dual, const CartanPoint& a_dual, const CartanWeylBasis& basis,
                          const FactorizationOptions& opts = {});
DualChiralPoint make_dual_point(const LoopElement& k_dual, const CartanPoint& a_dual, const CartanWeylBasis& basis,
                                const FactorizationOptions& opts = {});

// U(k, a) = (Xi_R(k a)^{-1}, a^{-1})
DualChiralPoint duality_U(const ChiralPoint& p, const CartanWeylBasis& basis, const FactorizationOptions& opts = {});
// V(k~, a~) = (Xi_L(a~^{-1} k~^{-1})^{-1}, a~^{-1}); throws NotInDomain without a valid certificate.
ChiralPoint duality_V(const DualChiralPoint& p, const CartanWeylBasis& basis, const FactorizationOptions& opts = {});

// k~(sigma) -> k~(sigma - tau), a~ fixed.
DualChiralPoint evolve_infty(const DualChiralPoint& p, double tau, const CartanWeylBasis& basis,
                             const FactorizationOptions& opts = {});

// m(sigma) = k(sigma) exp(-i a^mu H^mu sigma) with alcove coordinates a^mu.
struct MonodromicField {
  LoopElement k;
  Eigen::VectorXd a;

  Matrix m(const CartanWeylBasis& basis, double sigma) const;
  // M = exp(-2 pi i a^mu H^mu)
  Matrix monodromy(const CartanWeylBasis& basis) const;
};

// k(sigma) -> k(sigma - tau) exp(i a^mu H^mu tau)
MonodromicField evolve_q(const MonodromicField& f, double tau, const CartanWeylBasis& basis);

// Samples m(2 pi j / M), j = 0..M (the last one at sigma = 2 pi), with the monodromy data a^mu.
struct MonodromicSamples {
  std::vector<Matrix> m;
  Eigen::VectorXd a;
};

MonodromicSamples to_samples(const MonodromicField& f, const CartanWeylBasis& basis, int M);
// Inverse of to_samples; MonodromyMismatch when m(2 pi) != m(0) M or the recovered k is not periodic.
MonodromicField from_samples(const MonodromicSamples& s, const CartanWeylBasis& basis, double tol = 1e-10);

}  // namespace loopfactor
