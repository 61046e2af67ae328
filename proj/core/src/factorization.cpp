#include "loopfactor/factorization.hpp"

#include <algorithm>
#include <cmath>

#include "loopfactor/error.hpp"

namespace loopfactor {

namespace {

double unitarity_defect(const LoopElement& v, const LoopOptions& opts) {
  const int n = v.n();
  const int M = grid_for_degree(v.degree(), opts);
  double worst = 0;
  for (const auto& m : to_grid(v, M))
    worst = std::max(worst, (m * m.adjoint() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
  return worst;
}

double negative_mode_size(const LoopElement& x) {
  double s = 0;
  for (const auto& [k, m] : x.modes())
    if (k < 0) s = std::max(s, m.cwiseAbs().maxCoeff());
  return s;
}

double positive_mode_size(const LoopElement& x) {
  double s = 0;
  for (const auto& [k, m] : x.modes())
    if (k > 0) s = std::max(s, m.cwiseAbs().maxCoeff());
  return s;
}

// Upper triangular u with positive diagonal and u u^dagger = Q.
Matrix upper_cholesky(const Matrix& Q) {
  const int n = int(Q.rows());
  Matrix J = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) J(i, n - 1 - i) = 1.0;
  Eigen::LLT<Matrix> llt(J * Q * J);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::SpectralFactorizationDiverged, "zero-mode Gram matrix not positive definite");
  return J * Matrix(llt.matrixL()) * J;
}

}  // namespace

ConstIwasawa iwasawa_const(const Matrix& g) {
  const int n = int(g.rows());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = R(i, i);
    const Complex ph = std::abs(d) > 0 ? d / std::abs(d) : Complex(1);
    Q.col(i) *= ph;
    R.row(i) /= ph;
    R(i, i) = Complex(R(i, i).real(), 0);
  }
  return {Q, R};
}

IwasawaLoop iwasawa_pointwise(const LoopElement& g, const LoopOptions& opts) {
  const double scale = std::max(1.0, g.max_abs());
  auto out = pointwise_map(
      {&g},
      [scale](const std::vector<Matrix>& v) {
        if (!(std::abs(v[0].determinant()) > 1e-10 * std::pow(scale, double(v[0].rows()))))
          throw Error(ErrorKind::NearSingular, "loop not invertible on the grid");
        auto kan = iwasawa_const(v[0]);
        return std::vector<Matrix>{kan.k, kan.an};
      },
      2, opts);
  IwasawaLoop r{out[0], out[1], 0};
  r.residual = sup_norm(g - r.k * r.an, opts.grid);
  return r;
}

CartanConst cartan_const(const Matrix& g) {
  const int n = int(g.rows());
  if (std::abs(g.determinant() - Complex(1)) > 1e-8 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::InvalidArgument, "cartan_const expects det g = 1");
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix U = svd.matrixU(), V = svd.matrixV();
  const Eigen::VectorXd s = svd.singularValues();
  for (int j = 0; j < n; ++j) {
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(V(i, j)) > std::abs(V(imax, j)) + 1e-12) imax = i;
    const Complex ph = V(imax, j) / std::abs(V(imax, j));
    V.col(j) /= ph;
    U.col(j) /= ph;
  }
  const Complex det = U.determinant();
  const Complex w = std::pow(det / std::abs(det), -1.0 / n);
  U *= w;
  V *= w;
  CartanConst out;
  out.u_l = U;
  out.u_r = V;
  out.a = s;
  out.common_phase = w;
  for (int i = 0; i + 1 < n; ++i)
    if (s(i) - s(i + 1) < 1e-6 * s(0)) out.degenerate = true;
  out.residual = (g - U * s.asDiagonal() * V.adjoint()).cwiseAbs().maxCoeff();
  return out;
}

FactorPair factor_Gstar_GL(const LoopElement& l, const FactorizationOptions& opts) {
  const int n = l.n();
  const LoopElement P = l * l.adjoint();
  const double scale = std::max(1.0, l.max_abs());
  int D = std::max(opts.min_block, 2 * P.degree());
  for (;;) {
    const int size = n * (D + 1);
    Matrix T(size, size);
    for (int j = 0; j <= D; ++j)
      for (int m = 0; m <= D; ++m) T.block(j * n, m * n, n, n) = P.mode(m - j);
    Eigen::LLT<Matrix> llt(T);
    if (llt.info() != Eigen::Success)
      throw Error(ErrorKind::SpectralFactorizationDiverged, "Toeplitz section not positive definite");
    Matrix rhs = Matrix::Zero(size, n);
    rhs.topRows(n).setIdentity();
    const Matrix Y = llt.solve(rhs);  // block j holds w_j^dagger
    LoopElement w(n);
    for (int j = 0; j <= D; ++j) w.set_mode(j, Y.block(j * n, 0, n, n).adjoint());
    const Matrix w0 = w.mode(0);
    const Matrix Q = w0.inverse();
    const Matrix u0 = upper_cholesky(0.5 * (Q + Q.adjoint()));
    LoopElement v = u0.adjoint() * (w * l);
    v = v.trimmed(opts.loop.trim_tol);
    const double defect = unitarity_defect(v, opts.loop);
    LoopElement u = l * v.adjoint();
    const double neg = negative_mode_size(u);
    if (defect <= opts.tol && neg <= opts.tol * scale) {
      FactorPair out;
      out.u = u.band(0, u.max_mode());
      out.v = v;
      out.block_size = D;
      const double ev_min = llt.matrixL().toDenseMatrix().diagonal().cwiseAbs().minCoeff();
      const double ev_max = llt.matrixL().toDenseMatrix().diagonal().cwiseAbs().maxCoeff();
      out.condition = std::pow(ev_max / ev_min, 2);
      out.ill_conditioned = out.condition > opts.cond_warn;
      out.residual = sup_norm(l - out.u * out.v, opts.loop.grid);
      return out;
    }
    if (2 * D > opts.max_block)
      throw Error(ErrorKind::SpectralFactorizationDiverged,
                  "no stationary spectral factor up to block size " + std::to_string(D) +
                      " (unitarity defect " + std::to_string(defect) + ")");
    D *= 2;
  }
}

GRGstarResult factor_GR_Gstar(const LoopElement& K, const FactorizationOptions& opts) {
  const int n = K.n();
  const double scale = std::max(1.0, K.max_abs());
  GRGstarResult out;
  int D = std::max(opts.min_block, 2 * K.degree());
  bool any_regular = false;
  for (;;) {
    const int size = n * (D + 1);
    // Unknown row blocks X_{-D..0}; equation block m in [-D, 0]: sum_j X_j K_{m-j} = delta_{m0}.
    Matrix T(size, size);
    for (int j = 0; j <= D; ++j)
      for (int m = 0; m <= D; ++m) T.block(j * n, m * n, n, n) = K.mode((m - D) - (j - D));
    Eigen::PartialPivLU<Matrix> lu(T.transpose());
    const double rcond = lu.rcond();
    out.condition = rcond > 0 ? 1.0 / rcond : INFINITY;
    out.block_size = D;
    if (rcond > opts.rank_tol) {
      any_regular = true;
      Matrix rhs = Matrix::Zero(size, n);
      rhs.bottomRows(n).setIdentity();
      const Matrix Xt = lu.solve(rhs);
      LoopElement X(n);
      for (int j = 0; j <= D; ++j) X.set_mode(j - D, Xt.block(j * n, 0, n, n).transpose());
      const LoopElement Y = X * K;
      const double tail = negative_mode_size(Y);
      if (tail <= opts.tol * scale) {
        const Matrix X0inv = X.mode(0).inverse();
        const ConstIwasawa qr = iwasawa_const(X0inv);
        LoopElement u = qr.an * Y.band(0, Y.max_mode());
        u = u.trimmed(opts.loop.trim_tol);
        LoopElement v = (K * inverse(u, opts.loop)).trimmed(opts.loop.trim_tol);
        const double pos = positive_mode_size(v);
        if (pos > 1e3 * opts.tol * scale) {
          out.verdict = DomainVerdict::NotInDomain;
          out.detail = "split factor has positive modes " + std::to_string(pos);
          return out;
        }
        out.verdict = DomainVerdict::Member;
        out.pair.u = u;
        out.pair.v = v.band(v.min_mode(), 0);
        out.pair.block_size = D;
        out.pair.condition = out.condition;
        out.pair.ill_conditioned = out.condition > opts.cond_warn;
        out.pair.residual = sup_norm(K - out.pair.v * out.pair.u, opts.loop.grid);
        out.detail = "member";
        return out;
      }
    }
    if (2 * D > opts.max_block) {
      out.verdict = DomainVerdict::NotInDomain;
      out.detail = any_regular ? "Galerkin solution did not converge up to block size " + std::to_string(D)
                               : "Galerkin sections rank deficient up to block size " + std::to_string(D);
      return out;
    }
    D *= 2;
  }
}

LambdaXi lambda_xi(const LoopElement& K, const FactorizationOptions& opts) {
  LambdaXi out;
  const FactorPair left = factor_Gstar_GL(K, opts);
  out.lambda_L = left.u;
  out.xi_R = left.v.adjoint();
  const GRGstarResult right = factor_GR_Gstar(K, opts);
  out.verdict = right.verdict;
  if (right.ok()) {
    out.lambda_R = inverse(right.pair.u, opts.loop);
    out.xi_L = right.pair.v;
  }
  return out;
}

LoopElement Lambda_L(const LoopElement& K, const FactorizationOptions& opts) {
  return factor_Gstar_GL(K, opts).u;
}

LoopElement Xi_R(const LoopElement& K, const FactorizationOptions& opts) {
  return factor_Gstar_GL(K, opts).v.adjoint();
}

LoopElement Lambda_R(const LoopElement& K, const FactorizationOptions& opts) {
  const auto r = factor_GR_Gstar(K, opts);
  if (!r.ok()) throw Error(ErrorKind::NotInDomain, r.detail);
  return inverse(r.pair.u, opts.loop);
}

LoopElement Xi_L(const LoopElement& K, const FactorizationOptions& opts) {
  const auto r = factor_GR_Gstar(K, opts);
  if (!r.ok()) throw Error(ErrorKind::NotInDomain, r.detail);
  return r.pair.v;
}

LoopElement compose_phi(const LoopElement& k_l, const Matrix& a, const LoopElement& k_r,
                        const FactorizationOptions& opts) {
  return (k_l * a) * Xi_R(k_r * a, opts);
}

InftyCartanTriple infty_cartan(const LoopElement& s, const CartanWeylBasis& basis,
                               const FactorizationOptions& opts) {
  // s = u_- u_0 with u_- of non-positive modes and u_0 based unitary.
  const FactorPair refl = factor_Gstar_GL(s.reflected(), opts);
  const Matrix base = refl.v(0.0);
  const LoopElement u_minus = refl.u.reflected() * base;
  const LoopElement u_0 = base.adjoint() * refl.v.reflected();
  const Matrix u_prime = u_minus.mode(0);
  const LoopElement u_N = u_minus * u_prime.inverse();
  const CartanConst cc = cartan_const(u_prime);

  InftyCartanTriple out;
  out.k_l = (u_N * cc.u_l).trimmed(opts.loop.trim_tol);
  out.a_diagonal = cc.a;
  out.a = cartan_log(basis, cc.a);
  out.phase_fix = cc.common_phase;
  out.degenerate = cc.degenerate;
  const Matrix a = cc.a.asDiagonal().toDenseMatrix().cast<Complex>();
  // g_r^{-1} = u_r^{-1} u_0
  const LoopElement g_r_inv = cc.u_r.adjoint() * u_0;
  const GRGstarResult right = factor_GR_Gstar(a * g_r_inv, opts);
  if (!right.ok()) throw Error(ErrorKind::NotInDomain, "a g_r^{-1} outside S_infinity: " + right.detail);
  out.k_r = inverse(right.pair.v, opts.loop).trimmed(opts.loop.trim_tol);
  out.residual = sup_norm(s - compose_phi(out.k_l, a, out.k_r, opts), opts.loop.grid);
  return out;
}

}  // namespace loopfactor
