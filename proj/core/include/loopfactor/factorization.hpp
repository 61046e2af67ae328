#pragma once

#include <optional>
#include <string>

#include "loopfactor/loop.hpp"

namespace loopfactor {

struct FactorizationOptions {
  LoopOptions loop;
  double tol = 1e-10;       // convergence and membership tolerance (relative)
  double rank_tol = 1e-9;   // reciprocal condition below which a section counts as singular
  double cond_warn = 1e8;   // condition number above which results are flagged
  int min_block = 4;
  int max_block = 128;
};

struct FactorPair {
  LoopElement u;  // in G*
  LoopElement v;  // in G_L or G_R
  double residual = 0;
  int block_size = 0;
  double condition = 1;
  bool ill_conditioned = false;
};

struct IwasawaLoop {
  LoopElement k;   // unitary pointwise
  LoopElement an;  // upper triangular, positive diagonal pointwise
  double residual = 0;
};

// g(sigma) = k(sigma) an(sigma) at every grid point.
IwasawaLoop iwasawa_pointwise(const LoopElement& g, const LoopOptions& opts = {});

struct ConstIwasawa {
  Matrix k;
  Matrix an;
};
// g = k an with k unitary and an upper triangular with positive diagonal.
ConstIwasawa iwasawa_const(const Matrix& g);

struct CartanConst {
  Matrix u_l;
  Eigen::VectorXd a;  // strictly decreasing unless degenerate
  Matrix u_r;
  Complex common_phase = 1;  // scalar applied to both u_l and u_r to reach det = 1
  bool degenerate = false;
  double residual = 0;
};

// g = u_l diag(a) u_r^{-1}. Gauge: the largest-modulus entry in each column of u_r
// is made real positive, then u_l and u_r share the scalar phase fixing det = 1.
CartanConst cartan_const(const Matrix& g);

// l = u v with u in G*, v in G_L.
FactorPair factor_Gstar_GL(const LoopElement& l, const FactorizationOptions& opts = {});

enum class DomainVerdict { Member, NotInDomain };

struct GRGstarResult {
  DomainVerdict verdict = DomainVerdict::NotInDomain;
  FactorPair pair;  // K = v u with v = pair.v in G_R, u = pair.u in G*
  double condition = 0;
  int block_size = 0;
  std::string detail;

  bool ok() const { return verdict == DomainVerdict::Member; }
};

// K = v_R u; NotInDomain when K lies outside S_infinity (singular Galerkin sections).
GRGstarResult factor_GR_Gstar(const LoopElement& K, const FactorizationOptions& opts = {});

struct LambdaXi {
  LoopElement lambda_L;
  LoopElement xi_R;
  DomainVerdict verdict = DomainVerdict::NotInDomain;
  LoopElement lambda_R;  // valid when verdict == Member
  LoopElement xi_L;
};

LambdaXi lambda_xi(const LoopElement& K, const FactorizationOptions& opts = {});

LoopElement Lambda_L(const LoopElement& K, const FactorizationOptions& opts = {});
LoopElement Xi_R(const LoopElement& K, const FactorizationOptions& opts = {});
// Throw Error(NotInDomain) outside S_infinity.
LoopElement Lambda_R(const LoopElement& K, const FactorizationOptions& opts = {});
LoopElement Xi_L(const LoopElement& K, const FactorizationOptions& opts = {});

struct InftyCartanTriple {
  LoopElement k_l;
  CartanPoint a;
  Eigen::VectorXd a_diagonal;
  LoopElement k_r;
  Complex phase_fix = 1;  // common phase of the constant Cartan gauge
  bool degenerate = false;
  double residual = 0;
};

// s = k_l a Xi_R(k_r a).
InftyCartanTriple infty_cartan(const LoopElement& s, const CartanWeylBasis& basis,
                               const FactorizationOptions& opts = {});
LoopElement compose_phi(const LoopElement& k_l, const Matrix& a, const LoopElement& k_r,
                        const FactorizationOptions& opts = {});

}  // namespace loopfactor
