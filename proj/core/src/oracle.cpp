#include "loopfactor/oracle.hpp"

#include <chrono>

namespace loopfactor {

OraclePoints OraclePoints::sample(Sampler& s) {
  OraclePoints p;
  p.g = s.random_Gstar(1, 2);
  p.K = s.random_S(1, 1, 0.2);
  p.k = s.random_GR(1, 2);
  p.a = s.random_chamber_point();
  return p;
}

std::vector<OracleCase> registry_cases(const OraclePoints& pts) {
  using OK = ObservableKind;
  using EK = ExchangeKind;
  using BK = BivectorKind;
  auto of = [](OK k) { return MatrixObservable::of(k); };
  const PhasePoint g = PhasePoint::on_double(pts.g);
  const PhasePoint K = PhasePoint::on_double(pts.K);
  const PhasePoint c = PhasePoint::chiral(pts.k, pts.a);
  return {
      {"pi_star Y.Y", BK::PiStar, of(OK::Upsilon), of(OK::Upsilon), g, EK::UpsilonUpsilon, 1},
      {"pi_star_op Y.Y", BK::PiStarOp, of(OK::Upsilon), of(OK::Upsilon), g, EK::UpsilonUpsilon, 1},
      {"pi_star Yd.Yd", BK::PiStar, of(OK::UpsilonDagInv), of(OK::UpsilonDagInv), g, EK::DagInvDagInv, 1},
      {"pi_star_op Yd.Yd", BK::PiStarOp, of(OK::UpsilonDagInv), of(OK::UpsilonDagInv), g, EK::DagInvDagInv, 1},
      {"pi_star Yd.Y", BK::PiStar, of(OK::UpsilonDagInv), of(OK::Upsilon), g, EK::DagInvUpsilon, 1},
      {"pi_star_op Yd.Y", BK::PiStarOp, of(OK::UpsilonDagInv), of(OK::Upsilon), g, EK::DagInvUpsilonOp, 1},
      {"pi_star_left Yd.Y", BK::PiStarLeft, of(OK::UpsilonDagInv), of(OK::Upsilon), g, EK::DagInvUpsilonLeftPL, 1},
      {"pi_star_right Yd.Y", BK::PiStarRight, of(OK::UpsilonDagInv), of(OK::Upsilon), g, EK::DagInvUpsilonRightPL, 1},
      {"pi_D_infty L.L", BK::PiDInfty, of(OK::LeftCurrent), of(OK::LeftCurrent), K, EK::LeftCurrent, 1},
      {"pi_D_infty R.R", BK::PiDInfty, of(OK::RightCurrent), of(OK::RightCurrent), K, EK::RightCurrent, 1},
      {"pi_infty a.ka", BK::PiInfty, of(OK::CartanA), of(OK::KA), c, EK::CartanKA, 1},
      {"pi_infty ka.ka", BK::PiInfty, of(OK::KA), of(OK::KA), c, EK::KAKA, 1},
      {"pi_infty kad.kad", BK::PiInfty, of(OK::KADagInv), of(OK::KADagInv), c, EK::KADagKADag, 1},
      {"pi_infty ka.kad", BK::PiInfty, of(OK::KA), of(OK::KADagInv), c, EK::KAKADag, 1},
      {"pi_infty lam.lam", BK::PiInfty, of(OK::LambdaLofKA), of(OK::LambdaLofKA), c, EK::LambdaLambda, 1},
      {"pi_infty k.lam", BK::PiInfty, of(OK::K), of(OK::LambdaLofKA), c, EK::KLambda, 1},
      {"pi_infty a.lam", BK::PiInfty, of(OK::CartanA), of(OK::LambdaLofKA), c, EK::CartanLambda, 1},
      {"dual a.k", BK::PiInfty, of(OK::DualA), of(OK::DualK), c, EK::DualCartanK, -1},
      {"dual k.k", BK::PiInfty, of(OK::DualK), of(OK::DualK), c, EK::DualKK, -1},
  };
}

OracleResult run_oracle(const OracleCase& c, const AffineBasis& basis, const BracketContext& ctx, int W,
                        DerivativeMethod method) {
  const auto t0 = std::chrono::steady_clock::now();
  const BivectorSpec spec = build_bivector(c.bivector, basis, c.point, {}, ctx.factor.loop);
  const BracketField br = bivector_bracket(spec, c.F, c.G, c.point, ctx, method);
  ExchangeArgs args;
  args.form = RForm::Series(basis.cutoff());
  if (c.point.space == PhaseSpace::Chiral) {
    args.cartan = c.point.cartan();
    if (c.kind == ExchangeKind::DualCartanK || c.kind == ExchangeKind::DualKK) args.cartan = c.point.cartan().inverse();
  }
  const LoopElement fa = evaluate(c.F, c.point, ctx), fb = evaluate(c.G, c.point, ctx);
  ModeWindow lhs = br.window(W);
  if (c.sign != 1.0)
    for (auto& row : lhs)
      for (auto& x : row) x *= c.sign;
  const ModeWindow rhs = exchange_window(ctx.lie, c.kind, fa, fb, args, W);
  // natural scale of A (x) B for brackets that vanish identically
  const double floor = sup_norm(fa) * sup_norm(fb);
  OracleResult r{c.name, window_deviation(lhs, rhs, floor), basis.cutoff(), W, 0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace loopfactor
