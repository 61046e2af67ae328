#include "loopfactor/exchange.hpp"

#include <cmath>
#include <unsupported/Eigen/FFT>

#include "loopfactor/error.hpp"

namespace loopfactor {

const char* to_string(ExchangeKind k) {
  switch (k) {
    case ExchangeKind::UpsilonUpsilon: return "upsilon-upsilon";
    case ExchangeKind::DagInvDagInv: return "daginv-daginv";
    case ExchangeKind::DagInvUpsilon: return "daginv-upsilon";
    case ExchangeKind::DagInvUpsilonOp: return "daginv-upsilon-op";
    case ExchangeKind::DagInvUpsilonLeftPL: return "daginv-upsilon-left";
    case ExchangeKind::DagInvUpsilonRightPL: return "daginv-upsilon-right";
    case ExchangeKind::LeftCurrent: return "left-current";
    case ExchangeKind::RightCurrent: return "right-current";
    case ExchangeKind::CartanKA: return "a-ka";
    case ExchangeKind::KAKA: return "ka-ka";
    case ExchangeKind::KADagKADag: return "kadag-kadag";
    case ExchangeKind::KAKADag: return "ka-kadag";
    case ExchangeKind::LambdaLambda: return "lambda-lambda";
    case ExchangeKind::KLambda: return "k-lambda";
    case ExchangeKind::CartanLambda: return "a-lambda";
    case ExchangeKind::DualCartanK: return "dual-a-k";
    case ExchangeKind::DualKK: return "dual-k-k";
    case ExchangeKind::EllipticCartanK: return "elliptic-a-k";
    case ExchangeKind::EllipticKK: return "elliptic-k-k";
  }
  return "?";
}

std::vector<ExchangeKind> all_exchange_kinds() {
  std::vector<ExchangeKind> out;
  for (int i = 0; i <= int(ExchangeKind::EllipticKK); ++i) out.push_back(ExchangeKind(i));
  return out;
}

namespace {

TensorOperator cartan_square(const CartanWeylBasis& basis) {
  const int n = basis.n();
  TensorOperator s = TensorOperator::Zero(n * n, n * n);
  for (int mu = 0; mu < basis.rank(); ++mu) s += kron(basis.H(mu), basis.H(mu));
  return s;
}

}  // namespace

TensorOperator exchange_rhs(const CartanWeylBasis& basis, ExchangeKind kind, const ExchangeArgs& args) {
  const int n = basis.n();
  auto check = [&](const Matrix& m) {
    if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::DimensionMismatch, "exchange field size");
  };
  if (kind == ExchangeKind::CartanLambda) return TensorOperator::Zero(n * n, n * n);
  check(args.A);
  check(args.B);
  const Complex I(0, 1);
  const Matrix one = Matrix::Identity(n, n);
  const TensorOperator X = kron(args.A, args.B);
  const TensorOperator r = canonical_r_tensor(basis);
  const TensorOperator C = casimir_tensor(basis);
  const double x = args.sigma - args.sigma_prime;

  switch (kind) {
    case ExchangeKind::CartanKA:
    case ExchangeKind::DualCartanK:
      return -I * X * cartan_square(basis);
    case ExchangeKind::EllipticCartanK:
      return -I * args.eps_prime * X * cartan_square(basis);
    case ExchangeKind::DagInvUpsilonRightPL:
      return (r + I * C) * X - X * (r + I * C);
    case ExchangeKind::DagInvUpsilonLeftPL:
      break;
    default:
      break;
  }

  const TensorOperator rt = r_trig(basis, x, args.form);
  switch (kind) {
    case ExchangeKind::UpsilonUpsilon:
    case ExchangeKind::DagInvDagInv:
    case ExchangeKind::DagInvUpsilonLeftPL:
    case ExchangeKind::LambdaLambda:
      return rt * X - X * rt;
    case ExchangeKind::DagInvUpsilon:
      return rt * X - X * (r + I * C);
    case ExchangeKind::DagInvUpsilonOp:
      return (r + I * C) * X - X * rt;
    case ExchangeKind::LeftCurrent: {
      const TensorOperator A1 = kron(args.A, one), B1 = kron(one, args.B);
      return X * rt + rt * X - A1 * (r + I * C) * B1 - B1 * (r - I * C) * A1;
    }
    case ExchangeKind::RightCurrent: {
      const TensorOperator A1 = kron(args.A, one), B1 = kron(one, args.B);
      return -(X * rt) - rt * X + A1 * (r - I * C) * B1 + B1 * (r + I * C) * A1;
    }
    case ExchangeKind::KLambda:
      return rt * X;
    case ExchangeKind::EllipticKK:
      return X * felder_r(basis, args.alcove, x, args.eps_prime, args.level) + args.eps_prime * rt * X;
    default:
      break;
  }

  const TensorOperator cot = cot_part(basis, x, args.form);
  switch (kind) {
    case ExchangeKind::KAKA:
    case ExchangeKind::KADagKADag:
      return rt * X - X * (r_dynamical(basis, args.cartan) + cot);
    case ExchangeKind::KAKADag:
      return (r - I * C) * X - X * (r_dynamical(basis, args.cartan) + cot);
    case ExchangeKind::DualKK:
      return X * (r_dynamical(basis, args.cartan.inverse()) + cot) + rt * X;
    default:
      break;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown exchange kind");
}

std::function<TensorOperator(double, double)> exchange_function(const CartanWeylBasis& basis, ExchangeKind kind,
                                                                const LoopElement& fa, const LoopElement& fb,
                                                                const ExchangeArgs& base) {
  return [basis, kind, fa, fb, base](double s, double sp) {
    ExchangeArgs a = base;
    a.A = fa(s);
    a.B = fb(sp);
    a.sigma = s;
    a.sigma_prime = sp;
    return exchange_rhs(basis, kind, a);
  };
}

ModeWindow fourier_window(const std::function<TensorOperator(double, double)>& f, int W, int G) {
  if (W < 0 || 2 * W + 1 > G) throw Error(ErrorKind::InvalidArgument, "window larger than the sample grid");
  std::vector<std::vector<TensorOperator>> samples(G, std::vector<TensorOperator>(G));
  for (int a = 0; a < G; ++a)
    for (int b = 0; b < G; ++b) samples[a][b] = f(2 * M_PI * a / G, 2 * M_PI * b / G);
  const Eigen::Index d = samples[0][0].rows();
  const Eigen::Index e = samples[0][0].cols();

  Eigen::FFT<double> fft;
  ModeWindow out(2 * W + 1, std::vector<TensorOperator>(2 * W + 1, TensorOperator::Zero(d, e)));
  std::vector<Complex> in(G), spec;
  std::vector<std::vector<Complex>> partial(G, std::vector<Complex>(2 * W + 1));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < e; ++j) {
      for (int a = 0; a < G; ++a) {
        for (int b = 0; b < G; ++b) in[b] = samples[a][b](i, j);
        fft.fwd(spec, in);
        for (int mp = -W; mp <= W; ++mp) partial[a][mp + W] = spec[(mp + G) % G] / double(G);
      }
      for (int mp = -W; mp <= W; ++mp) {
        for (int a = 0; a < G; ++a) in[a] = partial[a][mp + W];
        fft.fwd(spec, in);
        for (int m = -W; m <= W; ++m) out[m + W][mp + W](i, j) = spec[(m + G) % G] / double(G);
      }
    }
  return out;
}

Complex contact_coefficient(ExchangeKind kind) {
  switch (kind) {
    case ExchangeKind::LeftCurrent:
    case ExchangeKind::DualKK:
      return Complex(0, -2);
    case ExchangeKind::RightCurrent:
      return Complex(0, 2);
    default:
      return 0.0;
  }
}

ModeWindow contact_window(const CartanWeylBasis& basis, ExchangeKind kind, const LoopElement& fa,
                          const LoopElement& fb, int W, int G) {
  const int n = basis.n();
  const Complex c = contact_coefficient(kind);
  ModeWindow out(2 * W + 1, std::vector<TensorOperator>(2 * W + 1, TensorOperator::Zero(n * n, n * n)));
  if (c == 0.0) return out;
  if (2 * W + 1 > G) throw Error(ErrorKind::InvalidArgument, "window larger than the sample grid");
  // 2 pi delta(s - s') g(s) has mode (m, m') equal to g_{m + m'}
  const TensorOperator C = casimir_tensor(basis);
  std::vector<TensorOperator> g(G);
  for (int a = 0; a < G; ++a) {
    const double s = 2 * M_PI * a / G;
    g[a] = c * C * kron(fa(s), fb(s));
  }
  for (int m = -W; m <= W; ++m)
    for (int mp = -W; mp <= W; ++mp) {
      TensorOperator acc = TensorOperator::Zero(n * n, n * n);
      for (int a = 0; a < G; ++a) acc += g[a] * std::exp(Complex(0, -(m + mp) * 2 * M_PI * a / G));
      out[m + W][mp + W] = acc / double(G);
    }
  return out;
}

ModeWindow exchange_window(const CartanWeylBasis& basis, ExchangeKind kind, const LoopElement& fa,
                           const LoopElement& fb, const ExchangeArgs& base, int W, int G) {
  ModeWindow out = fourier_window(exchange_function(basis, kind, fa, fb, base), W, G);
  const ModeWindow c = contact_window(basis, kind, fa, fb, W, G);
  for (size_t a = 0; a < out.size(); ++a)
    for (size_t b = 0; b < out[a].size(); ++b) out[a][b] += c[a][b];
  return out;
}

double window_deviation(const ModeWindow& x, const ModeWindow& y, double floor) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "window sizes differ");
  double diff = 0, scale = 0;
  for (size_t a = 0; a < x.size(); ++a)
    for (size_t b = 0; b < x[a].size(); ++b) {
      diff = std::max(diff, (x[a][b] - y[a][b]).cwiseAbs().maxCoeff());
      scale = std::max({scale, x[a][b].cwiseAbs().maxCoeff(), y[a][b].cwiseAbs().maxCoeff()});
    }
  return diff / std::max(scale, floor);
}

TensorOperator leibniz_combine(const PairBrackets& br, const Matrix& A, const Matrix& B, const Matrix& C,
                               const Matrix& D) {
  const Eigen::Index n = A.rows();
  for (const Matrix* m : {&B, &C, &D})
    if (m->rows() != n || m->cols() != n) throw Error(ErrorKind::DimensionMismatch, "leibniz factor size");
  for (const TensorOperator* t : {&br.BC, &br.BD, &br.AC, &br.AD})
    if (t->rows() != n * n || t->cols() != n * n) throw Error(ErrorKind::DimensionMismatch, "leibniz bracket size");
  const Matrix one = Matrix::Identity(n, n);
  return kron(A, one) * br.BC * kron(one, D) + kron(A, C) * br.BD + br.AC * kron(B, D) +
         kron(one, C) * br.AD * kron(B, one);
}

TensorOperator inverse_right(const TensorOperator& AB, const Matrix& B) {
  const Matrix Bi = B.inverse();
  const TensorOperator S = kron(Matrix::Identity(B.rows(), B.cols()), Bi);
  return -(S * AB * S);
}

TensorOperator inverse_left(const TensorOperator& AB, const Matrix& A) {
  const Matrix Ai = A.inverse();
  const TensorOperator S = kron(Ai, Matrix::Identity(A.rows(), A.cols()));
  return -(S * AB * S);
}

}  // namespace loopfactor
