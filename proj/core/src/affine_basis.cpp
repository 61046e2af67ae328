#include "loopfactor/affine_basis.hpp"

#include <cmath>

#include "loopfactor/error.hpp"

namespace loopfactor {

AffineGenerator AffineGenerator::negated() const {
  AffineGenerator g = *this;
  g.mode = -mode;
  if (!cartan) g.alpha = alpha.negated();
  return g;
}

LoopElement AffineGenerator::loop(const CartanWeylBasis& basis) const {
  return LoopElement::monomial(cartan ? basis.H(mu) : basis.E(alpha), mode);
}

std::string AffineGenerator::label() const {
  if (cartan) return "H" + std::to_string(mu + 1) + "@" + std::to_string(mode);
  return "E(" + std::to_string(alpha.i + 1) + "," + std::to_string(alpha.j + 1) + ")@" + std::to_string(mode);
}

AffineBasis::AffineBasis(const CartanWeylBasis& lie, int cutoff) : lie_(lie), cutoff_(cutoff) {
  if (cutoff < 0) throw Error(ErrorKind::InvalidArgument, "cutoff must be non-negative");
  for (const auto& a : lie.positive_roots()) roots_.push_back(AffineGenerator{false, a, 0, 0});
  for (int m = 1; m <= cutoff; ++m) {
    for (const auto& a : lie.roots()) roots_.push_back(AffineGenerator{false, a, 0, m});
    for (int mu = 0; mu < lie.rank(); ++mu) roots_.push_back(AffineGenerator{true, Root{}, mu, m});
  }

  const Complex I(0, 1);
  const double s2 = std::sqrt(2.0);
  for (int mu = 0; mu < lie.rank(); ++mu) {
    entries_.push_back(BasisEntry{Slot::T, mu, {}});
    const LoopElement h = LoopElement::constant(lie.H(mu));
    gL_.push_back(I * h);
    gstar_.push_back(h);
    gR_.push_back(I * h);
  }
  for (const auto& r : roots_) {
    const LoopElement ep = r.loop(lie);
    const LoopElement em = r.negated().loop(lie);
    const double len = r.length_sq();
    entries_.push_back(BasisEntry{Slot::B, 0, r});
    gL_.push_back((I / s2) * (ep + em));
    gstar_.push_back((len / s2) * ep);
    gR_.push_back(r.mode == 0 ? (I / s2) * (ep + em) : (I / s2) * em);

    entries_.push_back(BasisEntry{Slot::C, 0, r});
    gL_.push_back((1.0 / s2) * (ep - em));
    gstar_.push_back((-I * len / s2) * ep);
    gR_.push_back(r.mode == 0 ? (1.0 / s2) * (ep - em) : (-1.0 / s2) * em);
  }
}

int AffineBasis::index_of(Slot slot, const AffineGenerator& root) const {
  for (size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.slot != slot || slot == Slot::T) continue;
    const auto& r = e.root;
    if (r.cartan == root.cartan && r.mode == root.mode &&
        (r.cartan ? r.mu == root.mu : r.alpha == root.alpha))
      return int(i);
  }
  return -1;
}

Eigen::VectorXd pair_with_family(const std::vector<LoopElement>& family, const LoopElement& x) {
  Eigen::VectorXd c(family.size());
  for (size_t i = 0; i < family.size(); ++i) c(i) = pairing_D(x, family[i]);
  return c;
}

LoopElement project(const AffineBasis& basis, const LoopElement& x, Projector which) {
  if (x.n() != basis.lie().n()) throw Error(ErrorKind::DimensionMismatch, "loop size differs from basis");
  if (x.degree() > basis.cutoff())
    throw Error(ErrorKind::CutoffExceeded, "loop has modes beyond the basis cutoff");
  const std::vector<LoopElement>* pair_family = nullptr;
  const std::vector<LoopElement>* image = nullptr;
  switch (which) {
    case Projector::PL: pair_family = &basis.gstar(); image = &basis.gL(); break;
    case Projector::PR: pair_family = &basis.gstar(); image = &basis.gR(); break;
    case Projector::PLStar: pair_family = &basis.gL(); image = &basis.gstar(); break;
    case Projector::PRStar: pair_family = &basis.gR(); image = &basis.gstar(); break;
  }
  const Eigen::VectorXd c = pair_with_family(*pair_family, x);
  LoopElement out(x.n());
  for (int i = 0; i < c.size(); ++i)
    if (c(i) != 0.0) out += Complex(c(i)) * (*image)[i];
  return out;
}

}  // namespace loopfactor
