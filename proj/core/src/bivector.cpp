#include "loopfactor/bivector.hpp"

#include <cmath>
#include <map>

#include "loopfactor/error.hpp"

namespace loopfactor {

namespace {

std::vector<Direction> directions(const std::vector<LoopElement>& family, DirectionKind kind) {
  std::vector<Direction> out;
  out.reserve(family.size());
  for (const auto& x : family) out.push_back(kind == DirectionKind::Left ? Direction::left(x) : Direction::right(x));
  return out;
}

std::vector<LoopElement> twisted(const std::vector<LoopElement>& family, KappaTwist t) {
  std::vector<LoopElement> out;
  out.reserve(family.size());
  for (const auto& x : family) out.push_back(kappa_twist(x, t.eps, t.level));
  return out;
}

BivectorTerm diagonal_term(std::vector<Direction> first, std::vector<Direction> second, double c) {
  BivectorTerm term{std::move(first), std::move(second), {}};
  for (size_t i = 0; i < term.first.size(); ++i) term.entries.push_back({int(i), int(i), c});
  return term;
}

// Ad_{g^{-1}} x restricted to the modes the truncated basis can see.
struct Conjugator {
  LoopElement g, ginv;
  int cutoff;

  Conjugator(const LoopElement& g_, int N, const LoopOptions& opts) : g(g_), cutoff(N) {
    const int reach = 2 * N + g.degree();
    ginv = inverse(g, opts).band(-reach, reach);
  }
  LoopElement operator()(const LoopElement& x) const { return (ginv * x * g).band(-cutoff, cutoff); }
};

Eigen::MatrixXd pairing_matrix(const std::vector<LoopElement>& rows, const std::vector<LoopElement>& cols) {
  Eigen::MatrixXd P(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) P(i, j) = pairing_D(rows[i], cols[j]);
  return P;
}

// Pi^{ij} = -(A_i, p A_j)_D with p x = sum_k (x, u_k)_D w_k.
Eigen::MatrixXd projected_form(const std::vector<LoopElement>& A, const std::vector<LoopElement>& u,
                               const std::vector<LoopElement>& w) {
  return -(pairing_matrix(A, w) * pairing_matrix(A, u).transpose());
}

BivectorTerm dense_term(std::vector<Direction> first, std::vector<Direction> second, const Eigen::MatrixXd& P,
                        double sign) {
  BivectorTerm term{std::move(first), std::move(second), {}};
  for (int i = 0; i < P.rows(); ++i)
    for (int j = 0; j < P.cols(); ++j)
      if (P(i, j) != 0.0) term.entries.push_back({i, j, sign * P(i, j)});
  return term;
}

BivectorSpec affine_star(const AffineBasis& basis, const LoopElement& g, const std::vector<LoopElement>& dual,
                         const std::vector<LoopElement>& target, const char* name, const LoopOptions& opts) {
  const Conjugator ad(g, basis.cutoff(), opts);
  std::vector<LoopElement> A;
  for (const auto& x : dual) A.push_back(ad(x));
  const Eigen::MatrixXd P = projected_form(A, basis.gstar(), target);
  const auto t = directions(basis.gstar(), DirectionKind::Right);
  return BivectorSpec{name, basis.cutoff(), {dense_term(t, t, P, 1.0)}};
}

}  // namespace

const char* to_string(BivectorKind k) {
  switch (k) {
    case BivectorKind::PiDInfty: return "pi_D_infty";
    case BivectorKind::PiDKappa: return "pi_D_kappa";
    case BivectorKind::PiStar: return "pi_star";
    case BivectorKind::PiStarOp: return "pi_star_op";
    case BivectorKind::PiStarLeft: return "pi_star_left";
    case BivectorKind::PiStarRight: return "pi_star_right";
    case BivectorKind::PiR: return "pi_R";
    case BivectorKind::PiInfty: return "pi_infty";
  }
  return "?";
}

BivectorSpec pi_D_infty(const AffineBasis& basis) {
  BivectorSpec s{"pi_D_infty", basis.cutoff(), {}};
  s.terms.push_back(diagonal_term(directions(basis.gL(), DirectionKind::Left),
                                  directions(basis.gstar(), DirectionKind::Left), 1.0));
  s.terms.push_back(diagonal_term(directions(basis.gstar(), DirectionKind::Right),
                                  directions(basis.gR(), DirectionKind::Right), -1.0));
  return s;
}

BivectorSpec pi_D_kappa(const AffineBasis& basis, KappaTwist twist) {
  BivectorSpec s{"pi_D_kappa", basis.cutoff(), {}};
  s.terms.push_back(diagonal_term(directions(basis.gL(), DirectionKind::Left),
                                  directions(basis.gstar(), DirectionKind::Left), 1.0));
  s.terms.push_back(diagonal_term(directions(twisted(basis.gstar(), twist), DirectionKind::Right),
                                  directions(twisted(basis.gL(), twist), DirectionKind::Right), -1.0));
  return s;
}

BivectorSpec pi_star(const AffineBasis& basis, const LoopElement& g, const LoopOptions& opts) {
  // pairing partners of t_i in g_L are T_L^i; projection p_R
  return affine_star(basis, g, basis.gL(), basis.gR(), "pi_star", opts);
}

BivectorSpec pi_star_op(const AffineBasis& basis, const LoopElement& g, const LoopOptions& opts) {
  return affine_star(basis, g, basis.gR(), basis.gL(), "pi_star_op", opts);
}

BivectorSpec pi_star_left(const AffineBasis& basis, const LoopElement& g, const LoopOptions& opts) {
  return affine_star(basis, g, basis.gL(), basis.gL(), "pi_star_left", opts);
}

BivectorSpec pi_star_right(const AffineBasis& basis, const LoopElement& g, const LoopOptions& opts) {
  return affine_star(basis, g, basis.gR(), basis.gR(), "pi_star_right", opts);
}

BivectorSpec pi_R(const AffineBasis& basis, const LoopElement& k, const LoopOptions& opts) {
  const Conjugator ad(k, basis.cutoff(), opts);
  std::vector<LoopElement> A;
  for (const auto& x : basis.gstar()) A.push_back(ad(x));
  // p_R^* x = sum_l (x, T_R^l)_D t_l
  const Eigen::MatrixXd P = projected_form(A, basis.gR(), basis.gstar());
  const auto T = directions(basis.gR(), DirectionKind::Right);
  return BivectorSpec{"pi_R", basis.cutoff(), {dense_term(T, T, P, 1.0)}};
}

double pi_infty_coefficient(const CartanWeylBasis& lie, const AffineGenerator& root, const CartanPoint& a,
                            double wall_radius) {
  const double len = root.length_sq();
  if (root.cartan) return len;
  const double a2 = std::pow(a.power(lie, root.alpha), 2);
  if (root.mode > 0) return len / a2;
  if (std::abs(a2 - 1.0) < wall_radius)
    throw Error(ErrorKind::WallSingularity, "a^{2 alpha} = 1 for a zero-mode root");
  return len / (a2 - 1.0);
}

BivectorSpec pi_infty(const AffineBasis& basis, const LoopElement& k, const CartanPoint& a, const LoopOptions& opts) {
  const auto& lie = basis.lie();
  BivectorSpec s{"pi_infty", basis.cutoff(), {}};
  BivectorSpec r = pi_R(basis, k, opts);
  for (auto& e : r.terms[0].entries) e.c = -e.c;
  s.terms.push_back(std::move(r.terms[0]));

  BivectorTerm phi_l, phi_r;
  for (int mu = 0; mu < lie.rank(); ++mu) {
    phi_l.first.push_back(Direction::left(basis.gR()[mu]));
    phi_l.second.push_back(Direction::phi(mu));
    phi_l.entries.push_back({mu, mu, 1.0});
    phi_r.first.push_back(Direction::phi(mu));
    phi_r.second.push_back(Direction::left(basis.gR()[mu]));
    phi_r.entries.push_back({mu, mu, -1.0});
  }
  s.terms.push_back(std::move(phi_l));
  s.terms.push_back(std::move(phi_r));

  BivectorTerm bc;
  const auto& entries = basis.entries();
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].slot != Slot::B) continue;
    const int ib = int(i);
    const int ic = basis.index_of(Slot::C, entries[i].root);
    const double c = pi_infty_coefficient(lie, entries[i].root, a);
    const int at = int(bc.first.size());
    bc.first.push_back(Direction::left(basis.gR()[ib]));
    bc.first.push_back(Direction::left(basis.gR()[ic]));
    bc.second = bc.first;
    bc.entries.push_back({at, at + 1, -c});
    bc.entries.push_back({at + 1, at, c});
  }
  s.terms.push_back(std::move(bc));
  return s;
}

BivectorSpec build_bivector(BivectorKind kind, const AffineBasis& basis, const PhasePoint& p, KappaTwist twist,
                            const LoopOptions& opts) {
  switch (kind) {
    case BivectorKind::PiDInfty: return pi_D_infty(basis);
    case BivectorKind::PiDKappa: return pi_D_kappa(basis, twist);
    case BivectorKind::PiStar: return pi_star(basis, p.g, opts);
    case BivectorKind::PiStarOp: return pi_star_op(basis, p.g, opts);
    case BivectorKind::PiStarLeft: return pi_star_left(basis, p.g, opts);
    case BivectorKind::PiStarRight: return pi_star_right(basis, p.g, opts);
    case BivectorKind::PiR: return pi_R(basis, p.g, opts);
    case BivectorKind::PiInfty:
      if (p.space != PhaseSpace::Chiral) throw Error(ErrorKind::InvalidArgument, "pi_infty needs a chiral point");
      return pi_infty(basis, p.g, p.cartan(), opts);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown bivector");
}

void BracketField::add(const LoopElement& dF, const LoopElement& H) {
  if (dF.n() != n_ || H.n() != n_) throw Error(ErrorKind::DimensionMismatch, "bracket factor size");
  dF_.push_back(dF);
  H_.push_back(H);
}

TensorOperator BracketField::eval(double sigma, double sigma_prime) const {
  TensorOperator out = TensorOperator::Zero(n_ * n_, n_ * n_);
  for (size_t i = 0; i < dF_.size(); ++i) out += kron(dF_[i](sigma), H_[i](sigma_prime));
  return out;
}

std::vector<std::vector<TensorOperator>> BracketField::window(int W) const {
  std::vector<std::vector<TensorOperator>> B(2 * W + 1,
                                             std::vector<TensorOperator>(2 * W + 1, TensorOperator::Zero(n_ * n_, n_ * n_)));
  for (size_t i = 0; i < dF_.size(); ++i)
    for (const auto& [m, a] : dF_[i].modes()) {
      if (std::abs(m) > W) continue;
      for (const auto& [mp, b] : H_[i].modes())
        if (std::abs(mp) <= W) B[m + W][mp + W] += kron(a, b);
    }
  return B;
}

int BracketField::spread() const {
  int s = 0;
  for (const auto& x : dF_) s = std::max(s, x.degree());
  for (const auto& x : H_) s = std::max(s, x.degree());
  return s;
}

BracketField bivector_bracket(const BivectorSpec& spec, const MatrixObservable& F, const MatrixObservable& G,
                              const PhasePoint& p, const BracketContext& ctx, DerivativeMethod method) {
  const int n = ctx.lie.n();
  BracketField out(n);
  for (const auto& term : spec.terms) {
    std::map<int, LoopElement> dF, dG;
    for (const auto& e : term.entries) {
      if (!dF.count(e.i)) dF.emplace(e.i, directional_derivative(F, p, term.first.at(e.i), method, ctx));
      if (!dG.count(e.j)) dG.emplace(e.j, directional_derivative(G, p, term.second.at(e.j), method, ctx));
    }
    std::map<int, LoopElement> H;
    for (const auto& e : term.entries) {
      auto it = H.find(e.i);
      if (it == H.end()) it = H.emplace(e.i, LoopElement(n)).first;
      it->second += Complex(e.c) * dG.at(e.j);
    }
    for (const auto& [i, h] : H) {
      const LoopElement& f = dF.at(i);
      if (f.is_zero() || h.is_zero()) continue;
      out.add(f, h);
    }
  }
  return out;
}

}  // namespace loopfactor
