#include "loopfactor/loop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

#include "loopfactor/error.hpp"

namespace loopfactor {

namespace {

void check_same_n(const LoopElement& a, const LoopElement& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::DimensionMismatch, "loops have different matrix sizes");
}

int wrap(int k, int M) { return ((k % M) + M) % M; }

}  // namespace

LoopElement LoopElement::constant(const Matrix& m) {
  LoopElement x(int(m.rows()));
  x.set_mode(0, m);
  return x;
}

LoopElement LoopElement::identity(int n) { return constant(Matrix::Identity(n, n)); }

LoopElement LoopElement::monomial(const Matrix& m, int k) {
  LoopElement x(int(m.rows()));
  x.set_mode(k, m);
  return x;
}

int LoopElement::degree() const { return std::max(std::abs(min_mode()), std::abs(max_mode())); }

Matrix LoopElement::mode(int k) const {
  auto it = modes_.find(k);
  return it == modes_.end() ? Matrix::Zero(n_, n_) : it->second;
}

void LoopElement::set_mode(int k, const Matrix& m) {
  if (m.rows() != n_ || m.cols() != n_) throw Error(ErrorKind::DimensionMismatch, "mode has wrong size");
  modes_[k] = m;
}

void LoopElement::add_to_mode(int k, const Matrix& m) {
  if (m.rows() != n_ || m.cols() != n_) throw Error(ErrorKind::DimensionMismatch, "mode has wrong size");
  auto it = modes_.find(k);
  if (it == modes_.end())
    modes_.emplace(k, m);
  else
    it->second += m;
}

Matrix LoopElement::operator()(double sigma) const {
  Matrix v = Matrix::Zero(n_, n_);
  for (const auto& [k, m] : modes_) v += std::polar(1.0, k * sigma) * m;
  return v;
}

LoopElement LoopElement::adjoint() const {
  LoopElement r(n_);
  for (const auto& [k, m] : modes_) r.modes_.emplace(-k, m.adjoint());
  return r;
}

LoopElement LoopElement::reflected() const {
  LoopElement r(n_);
  for (const auto& [k, m] : modes_) r.modes_.emplace(-k, m);
  return r;
}

LoopElement LoopElement::rotated(double tau) const {
  LoopElement r(n_);
  for (const auto& [k, m] : modes_) r.modes_.emplace(k, std::polar(1.0, -k * tau) * m);
  return r;
}

LoopElement LoopElement::trimmed(double rel_tol) const {
  const double cut = rel_tol * std::max(1.0, max_abs());
  LoopElement r(n_);
  for (const auto& [k, m] : modes_)
    if (m.cwiseAbs().maxCoeff() > cut) r.modes_.emplace(k, m);
  return r;
}

LoopElement LoopElement::band(int lo, int hi) const {
  LoopElement r(n_);
  for (const auto& [k, m] : modes_)
    if (k >= lo && k <= hi) r.modes_.emplace(k, m);
  return r;
}

LoopElement& LoopElement::operator+=(const LoopElement& o) {
  if (n_ == 0) n_ = o.n_;
  check_same_n(*this, o);
  for (const auto& [k, m] : o.modes_) add_to_mode(k, m);
  return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& o) {
  if (n_ == 0) n_ = o.n_;
  check_same_n(*this, o);
  for (const auto& [k, m] : o.modes_) add_to_mode(k, -m);
  return *this;
}

LoopElement& LoopElement::operator*=(Complex c) {
  for (auto& [k, m] : modes_) m *= c;
  return *this;
}

double LoopElement::max_abs() const {
  double s = 0;
  for (const auto& [k, m] : modes_) s = std::max(s, m.cwiseAbs().maxCoeff());
  return s;
}

LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
LoopElement operator*(Complex c, LoopElement a) { return a *= c; }

LoopElement operator*(const Matrix& m, const LoopElement& a) {
  LoopElement r(a.n());
  for (const auto& [k, g] : a.modes()) r.set_mode(k, m * g);
  return r;
}

LoopElement operator*(const LoopElement& a, const Matrix& m) {
  LoopElement r(a.n());
  for (const auto& [k, g] : a.modes()) r.set_mode(k, g * m);
  return r;
}

LoopElement operator*(const LoopElement& a, const LoopElement& b) {
  check_same_n(a, b);
  if (a.is_zero() || b.is_zero()) return LoopElement(a.n());
  const int lo = a.min_mode() + b.min_mode();
  const int hi = a.max_mode() + b.max_mode();
  const int ma = int(a.modes().size()), mb = int(b.modes().size());
  LoopElement r(a.n());
  if (ma * mb <= 64) {
    for (const auto& [ka, ga] : a.modes())
      for (const auto& [kb, gb] : b.modes()) r.add_to_mode(ka + kb, ga * gb);
    return r.trimmed(1e-15);
  }
  const int M = power_of_two_at_least(2 * std::max(std::abs(lo), std::abs(hi)) + 2);
  auto ga = to_grid(a, M);
  const auto gb = to_grid(b, M);
  for (int j = 0; j < M; ++j) ga[j] = ga[j] * gb[j];
  return from_grid(ga, M / 2 - 1).band(lo, hi).trimmed(1e-15);
}

double mode_distance(const LoopElement& a, const LoopElement& b) { return (a - b).max_abs(); }

double sup_norm(const LoopElement& a, int M) {
  M = std::max(M, power_of_two_at_least(4 * a.degree() + 4));
  double s = 0;
  for (const auto& m : to_grid(a, M)) s = std::max(s, m.cwiseAbs().maxCoeff());
  return s;
}

int power_of_two_at_least(int m) {
  int p = 1;
  while (p < m) p <<= 1;
  return p;
}

int grid_for_degree(int degree, const LoopOptions& opts) {
  return std::max(power_of_two_at_least(opts.grid), power_of_two_at_least(4 * degree + 4));
}

std::vector<Matrix> to_grid(const LoopElement& a, int M) {
  const int n = a.n();
  if (2 * a.degree() >= M) throw Error(ErrorKind::TruncationOverflow, "grid too small for loop degree");
  std::vector<Matrix> out(M, Matrix::Zero(n, n));
  if (a.is_zero()) return out;
  Eigen::FFT<double> fft;
  std::vector<Complex> spec(M), vals(M);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::fill(spec.begin(), spec.end(), Complex(0));
      for (const auto& [k, m] : a.modes()) spec[wrap(k, M)] = m(r, c);
      fft.inv(vals, spec);
      for (int j = 0; j < M; ++j) out[j](r, c) = vals[j] * double(M);
    }
  return out;
}

LoopElement from_grid(const std::vector<Matrix>& samples, int cutoff, double* residue) {
  const int M = int(samples.size());
  if (M == 0) throw Error(ErrorKind::InvalidArgument, "empty sample set");
  const int n = int(samples[0].rows());
  std::vector<Matrix> modes(M, Matrix::Zero(n, n));
  Eigen::FFT<double> fft;
  std::vector<Complex> vals(M), spec(M);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      for (int j = 0; j < M; ++j) vals[j] = samples[j](r, c);
      fft.fwd(spec, vals);
      for (int k = 0; k < M; ++k) modes[k](r, c) = spec[k] / double(M);
    }
  LoopElement out(n);
  double res = 0;
  for (int k = 0; k < M; ++k) {
    const int kk = k <= M / 2 ? k : k - M;
    if (std::abs(kk) <= cutoff && kk != M / 2)
      out.set_mode(kk, modes[k]);
    else
      res = std::max(res, modes[k].cwiseAbs().maxCoeff());
  }
  if (residue) *residue = res;
  return out;
}

std::vector<LoopElement> pointwise_map(
    const std::vector<const LoopElement*>& inputs,
    const std::function<std::vector<Matrix>(const std::vector<Matrix>&)>& f, int outputs,
    const LoopOptions& opts) {
  int deg = 0;
  for (const auto* x : inputs) deg = std::max(deg, x->degree());
  int M = grid_for_degree(deg, opts);
  for (;;) {
    std::vector<std::vector<Matrix>> in_grid;
    for (const auto* x : inputs) in_grid.push_back(to_grid(*x, M));
    std::vector<std::vector<Matrix>> out_grid(outputs, std::vector<Matrix>(M));
    std::vector<Matrix> args(inputs.size());
    for (int j = 0; j < M; ++j) {
      for (size_t i = 0; i < inputs.size(); ++i) args[i] = in_grid[i][j];
      auto vals = f(args);
      for (int o = 0; o < outputs; ++o) out_grid[o][j] = std::move(vals[o]);
    }
    std::vector<LoopElement> out;
    bool resolved = true;
    for (int o = 0; o < outputs; ++o) {
      double residue = 0;
      LoopElement x = from_grid(out_grid[o], M / 4, &residue);
      if (residue > opts.truncation_tol * std::max(1.0, x.max_abs())) resolved = false;
      out.push_back(x.trimmed(opts.trim_tol));
    }
    if (resolved) return out;
    if (M >= opts.max_grid)
      throw Error(ErrorKind::TruncationOverflow, "pointwise map not resolved on grid " + std::to_string(M));
    M *= 2;
  }
}

LoopElement loop_multiply(const LoopElement& a, const LoopElement& b, int out_cutoff,
                          const LoopOptions& opts) {
  check_same_n(a, b);
  const int M = grid_for_degree(a.degree() + b.degree(), opts);
  auto ga = to_grid(a, M);
  const auto gb = to_grid(b, M);
  for (int j = 0; j < M; ++j) ga[j] = ga[j] * gb[j];
  double residue = 0;
  LoopElement r = from_grid(ga, out_cutoff, &residue);
  const double scale = std::max(1.0, a.max_abs() * b.max_abs());
  if (residue > opts.truncation_tol * scale)
    throw Error(ErrorKind::TruncationOverflow, "product has modes beyond the output cutoff");
  return r.trimmed(opts.trim_tol);
}

namespace {

Matrix checked_inverse(const Matrix& g, double scale) {
  Eigen::PartialPivLU<Matrix> lu(g);
  const double det = std::abs(lu.determinant());
  if (!(det > 1e-10 * std::pow(scale, double(g.rows()))))
    throw Error(ErrorKind::NearSingular, "loop is not invertible on the grid");
  return lu.inverse();
}

}  // namespace

LoopElement loop_inverse(const LoopElement& a, int out_cutoff, const LoopOptions& opts) {
  const int M = std::max(grid_for_degree(a.degree(), opts), power_of_two_at_least(2 * out_cutoff + 2));
  auto g = to_grid(a, M);
  const double scale = std::max(1.0, a.max_abs());
  for (auto& m : g) m = checked_inverse(m, scale);
  double residue = 0;
  LoopElement r = from_grid(g, out_cutoff, &residue);
  if (residue > opts.truncation_tol * std::max(1.0, r.max_abs()))
    throw Error(ErrorKind::TruncationOverflow, "inverse has modes beyond the output cutoff");
  return r.trimmed(opts.trim_tol);
}

LoopElement inverse(const LoopElement& a, const LoopOptions& opts) {
  const double scale = std::max(1.0, a.max_abs());
  return pointwise_map(
      {&a}, [scale](const std::vector<Matrix>& v) { return std::vector<Matrix>{checked_inverse(v[0], scale)}; },
      1, opts)[0];
}

LoopElement loop_exp(const LoopElement& x, const LoopOptions& opts) {
  return pointwise_map(
      {&x}, [](const std::vector<Matrix>& v) { return std::vector<Matrix>{Matrix(v[0].exp())}; }, 1, opts)[0];
}

Complex pairing_loop(const LoopElement& x, const LoopElement& y) {
  check_same_n(x, y);
  Complex s = 0;
  for (const auto& [k, m] : x.modes()) {
    auto it = y.modes().find(-k);
    if (it != y.modes().end()) s += pairing_K(m, it->second);
  }
  return s;
}

double pairing_D(const LoopElement& x, const LoopElement& y) { return pairing_loop(x, y).imag(); }

LoopElement kappa_twist(const LoopElement& x, double eps, int k) {
  if (!(eps > 0)) throw Error(ErrorKind::InvalidArgument, "twist parameter must be positive");
  LoopElement r(x.n());
  for (const auto& [m, g] : x.modes()) {
    const double e = -double(m) * k * eps;
    if (e > 700) throw Error(ErrorKind::Overflow, "twist factor overflows");
    r.set_mode(m, std::exp(e) * g);
  }
  return r;
}

const char* to_string(Subgroup s) {
  switch (s) {
    case Subgroup::GStar: return "G*";
    case Subgroup::GL: return "G_L";
    case Subgroup::GR: return "G_R";
    case Subgroup::D: return "D";
  }
  return "?";
}

namespace {

double an_violation(const Matrix& g, std::string* why) {
  double worst = 0;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < i; ++j) worst = std::max(worst, std::abs(g(i, j)));
    const double im = std::abs(g(i, i).imag());
    if (im > 1e-9) {
      worst = std::max(worst, im);
      *why = "zero mode diagonal not real";
    }
    if (!(g(i, i).real() > 1e-9)) {
      worst = std::max(worst, 1.0);
      *why = "zero mode diagonal not positive";
    }
  }
  return worst;
}

}  // namespace

Membership membership(const LoopElement& x, Subgroup which, double tol, const LoopOptions& opts) {
  Membership out;
  const int n = x.n();
  const double scale = std::max(1.0, x.max_abs());
  const int M = grid_for_degree(x.degree(), opts);
  const auto g = to_grid(x, M);
  double min_det = 1e300;
  for (const auto& m : g) min_det = std::min(min_det, std::abs(m.determinant()));
  std::ostringstream why;
  if (!(min_det > 1e-10 * std::pow(scale, n))) {
    out.worst = 1.0;
    out.detail = "not invertible on grid (min |det| = " + std::to_string(min_det) + ")";
    return out;
  }
  switch (which) {
    case Subgroup::D:
      out.member = true;
      out.detail = "invertible on grid";
      return out;
    case Subgroup::GL: {
      double worst = 0;
      for (const auto& m : g) worst = std::max(worst, (m * m.adjoint() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
      out.worst = worst;
      out.member = worst <= tol;
      out.detail = "max unitarity defect on grid";
      return out;
    }
    case Subgroup::GStar: {
      double neg = 0;
      for (const auto& [k, m] : x.modes())
        if (k < 0) neg = std::max(neg, m.cwiseAbs().maxCoeff());
      std::string reason = "negative modes / zero mode outside AN";
      const double an = an_violation(x.mode(0), &reason);
      out.worst = std::max(neg, an);
      out.member = neg <= tol * scale && an <= tol * scale;
      out.detail = reason;
      return out;
    }
    case Subgroup::GR: {
      double pos = 0;
      for (const auto& [k, m] : x.modes())
        if (k > 0) pos = std::max(pos, m.cwiseAbs().maxCoeff());
      const Matrix g0 = x.mode(0);
      const double unit = (g0 * g0.adjoint() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
      out.worst = std::max(pos, unit);
      out.member = pos <= tol * scale && unit <= tol;
      out.detail = "positive modes / zero mode not unitary";
      return out;
    }
  }
  return out;
}

}  // namespace loopfactor
