#include "loopfactor/observables.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "loopfactor/error.hpp"

namespace loopfactor {

namespace {

bool on_double(ObservableKind k) {
  switch (k) {
    case ObservableKind::Upsilon:
    case ObservableKind::UpsilonDagInv:
    case ObservableKind::LeftCurrent:
    case ObservableKind::RightCurrent:
    case ObservableKind::LambdaL:
    case ObservableKind::LambdaR:
    case ObservableKind::XiL:
    case ObservableKind::XiR:
      return true;
    default:
      return false;
  }
}

LoopElement group_exp(const LoopElement& X, double s, const LoopOptions& opts) {
  const int n = X.n();
  if (X.degree() == 0) return LoopElement::constant(Matrix((s * X.mode(0)).exp()));
  const LoopElement sq = X * X;
  if (sq.max_abs() == 0.0) return LoopElement::identity(n) + Complex(s) * X;
  return loop_exp(Complex(s) * X, opts);
}

Matrix diag_inverse(const Matrix& a) {
  Matrix r = Matrix::Zero(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) r(i, i) = 1.0 / a(i, i);
  return r;
}

}  // namespace

const char* to_string(ObservableKind k) {
  switch (k) {
    case ObservableKind::Upsilon: return "Upsilon";
    case ObservableKind::UpsilonDagInv: return "UpsilonDagInv";
    case ObservableKind::LeftCurrent: return "LeftCurrent";
    case ObservableKind::RightCurrent: return "RightCurrent";
    case ObservableKind::LambdaL: return "LambdaL";
    case ObservableKind::LambdaR: return "LambdaR";
    case ObservableKind::XiL: return "XiL";
    case ObservableKind::XiR: return "XiR";
    case ObservableKind::CartanA: return "a";
    case ObservableKind::KA: return "ka";
    case ObservableKind::KADagInv: return "(ka)^{dagger -1}";
    case ObservableKind::K: return "k";
    case ObservableKind::LambdaLofKA: return "Lambda_L(ka)";
    case ObservableKind::DualK: return "Xi_R^{-1}(ka)";
    case ObservableKind::DualA: return "a^{-1}";
    case ObservableKind::Constant: return "constant";
  }
  return "?";
}

PhasePoint move(const PhasePoint& p, const Direction& d, double s, const LoopOptions& opts) {
  PhasePoint q = p;
  switch (d.kind) {
    case DirectionKind::Left:
      q.g = (p.g * group_exp(d.generator, s, opts)).trimmed(opts.trim_tol);
      break;
    case DirectionKind::Right:
      q.g = (group_exp(d.generator, s, opts) * p.g).trimmed(opts.trim_tol);
      break;
    case DirectionKind::Phi:
      if (p.space != PhaseSpace::Chiral || d.phi_index < 0 || d.phi_index >= p.phi.size())
        throw Error(ErrorKind::InvalidArgument, "Cartan direction needs a chiral point");
      q.phi(d.phi_index) += s;
      break;
  }
  return q;
}

LoopElement evaluate(const MatrixObservable& F, const PhasePoint& p, const BracketContext& ctx) {
  const auto& fo = ctx.factor;
  if (F.kind == ObservableKind::Constant) return LoopElement::constant(F.value);
  if (on_double(F.kind) != (p.space == PhaseSpace::Double))
    throw Error(ErrorKind::InvalidArgument, std::string("observable ") + to_string(F.kind) + " not defined on this space");
  const LoopElement& g = p.g;
  switch (F.kind) {
    case ObservableKind::Upsilon: return g;
    case ObservableKind::UpsilonDagInv: return inverse(g.adjoint(), fo.loop);
    case ObservableKind::LeftCurrent: {
      const LoopElement l = Lambda_L(g, fo);
      return l * l.adjoint();
    }
    case ObservableKind::RightCurrent: {
      const LoopElement r = Lambda_R(g, fo);
      return r.adjoint() * r;
    }
    case ObservableKind::LambdaL: return Lambda_L(g, fo);
    case ObservableKind::LambdaR: return Lambda_R(g, fo);
    case ObservableKind::XiL: return Xi_L(g, fo);
    case ObservableKind::XiR: return Xi_R(g, fo);
    default: break;
  }
  const Matrix a = p.cartan().exp(ctx.lie);
  switch (F.kind) {
    case ObservableKind::CartanA: return LoopElement::constant(a);
    case ObservableKind::KA: return g * a;
    case ObservableKind::KADagInv: return inverse(g.adjoint(), fo.loop) * diag_inverse(a);
    case ObservableKind::K: return g;
    case ObservableKind::LambdaLofKA: return Lambda_L(g * a, fo);
    case ObservableKind::DualK: return factor_Gstar_GL(g * a, fo).v;
    case ObservableKind::DualA: return LoopElement::constant(diag_inverse(a));
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown observable");
}

bool has_closed_derivative(const MatrixObservable& F, const Direction& d) {
  switch (F.kind) {
    case ObservableKind::Upsilon:
    case ObservableKind::UpsilonDagInv:
      return d.kind != DirectionKind::Phi;
    case ObservableKind::CartanA:
    case ObservableKind::KA:
    case ObservableKind::KADagInv:
    case ObservableKind::K:
    case ObservableKind::DualA:
    case ObservableKind::Constant:
      return true;
    default:
      return false;
  }
}

namespace {

LoopElement closed_derivative(const MatrixObservable& F, const PhasePoint& p, const Direction& d,
                              const BracketContext& ctx) {
  const int n = ctx.lie.n();
  const LoopElement zero(n);
  const LoopElement& g = p.g;
  const LoopElement& X = d.generator;
  const bool left = d.kind == DirectionKind::Left;
  const bool phi = d.kind == DirectionKind::Phi;
  auto H = [&]() { return ctx.lie.H(d.phi_index); };
  switch (F.kind) {
    case ObservableKind::Constant: return zero;
    case ObservableKind::Upsilon: return left ? g * X : X * g;
    case ObservableKind::UpsilonDagInv: {
      const LoopElement gi = inverse(g.adjoint(), ctx.factor.loop);
      return -1.0 * (left ? gi * X.adjoint() : X.adjoint() * gi);
    }
    default: break;
  }
  const Matrix a = p.cartan().exp(ctx.lie);
  const Matrix ai = diag_inverse(a);
  switch (F.kind) {
    case ObservableKind::CartanA: return phi ? LoopElement::constant(a * H()) : zero;
    case ObservableKind::DualA: return phi ? LoopElement::constant(-ai * H()) : zero;
    case ObservableKind::K:
      if (phi) return zero;
      return left ? g * X : X * g;
    case ObservableKind::KA:
      if (phi) return (g * a) * H();
      return left ? (g * X) * a : (X * g) * a;
    case ObservableKind::KADagInv: {
      const LoopElement gi = inverse(g.adjoint(), ctx.factor.loop);
      if (phi) return -1.0 * ((gi * ai) * H());
      return -1.0 * (left ? (gi * X.adjoint()) * ai : (X.adjoint() * gi) * ai);
    }
    default: break;
  }
  throw Error(ErrorKind::InvalidArgument, "no closed derivative for this observable");
}

}  // namespace

LoopElement curve_derivative(const std::function<LoopElement(double)>& f, double h, bool richardson) {
  auto central = [&](double step) {
    return (1.0 / (2.0 * step)) * (f(step) - f(-step));
  };
  const LoopElement d1 = central(h);
  if (!richardson) return d1;
  const LoopElement d2 = central(h / 2);
  return (4.0 / 3.0) * d2 - (1.0 / 3.0) * d1;
}

LoopElement directional_derivative(const MatrixObservable& F, const PhasePoint& p, const Direction& d,
                                   DerivativeMethod method, const BracketContext& ctx) {
  const bool closed_ok = has_closed_derivative(F, d);
  if (method == DerivativeMethod::Closed && !closed_ok)
    throw Error(ErrorKind::InvalidArgument, std::string("no closed derivative for ") + to_string(F.kind));
  if (method == DerivativeMethod::Closed || (method == DerivativeMethod::Auto && closed_ok))
    return closed_derivative(F, p, d, ctx).trimmed(ctx.factor.loop.trim_tol);
  if (!(ctx.fd_step >= 1e-7 && ctx.fd_step <= 1e-2))
    throw Error(ErrorKind::InvalidArgument, "finite-difference step out of range");
  auto f = [&](double s) { return evaluate(F, move(p, d, s, ctx.factor.loop), ctx); };
  try {
    return curve_derivative(f, ctx.fd_step, ctx.richardson).trimmed(ctx.factor.loop.trim_tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInDomain) throw;
    return curve_derivative(f, ctx.fd_step / 2, ctx.richardson).trimmed(ctx.factor.loop.trim_tol);
  }
}

}  // namespace loopfactor
