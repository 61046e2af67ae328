#include <algorithm>
#include <cmath>
#include <functional>

#include "loopfactor/cli/app.hpp"
#include "loopfactor/dynamics.hpp"
#include "loopfactor/error.hpp"
#include "loopfactor/oracle.hpp"
#include "loopfactor/symplectic.hpp"

namespace loopfactor::cli {

namespace {

double maxabs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

LoopElement combination(const std::vector<LoopElement>& fam, Sampler& s, int n, double size = 0.5) {
  LoopElement x(n);
  for (const auto& f : fam) x += Complex(s.uniform(-size, size)) * f;
  return x;
}

Eigen::VectorXd random_vec(Sampler& s, int r) {
  Eigen::VectorXd v(r);
  for (int i = 0; i < r; ++i) v(i) = s.uniform(-1, 1);
  return v;
}

double torus_distance(const LoopElement& x, const LoopElement& y) {
  const Matrix t = x.mode(0).inverse() * y.mode(0);
  Matrix d = Matrix::Zero(t.rows(), t.cols());
  d.diagonal() = t.diagonal();
  return std::max(maxabs(t - d), mode_distance(x * d, y));
}

class Runner {
 public:
  explicit Runner(const RunConfig& c) : cfg_(c) {}

  void add(std::string name, std::string module, std::string kind, const std::function<double()>& f) {
    Check ch{std::move(name), std::move(module), kind, 0, tolerance(kind), false, false, {}};
    try {
      ch.measured = f();
      ch.pass = ch.measured <= ch.tolerance;
    } catch (const Error& e) {
      ch.measured = INFINITY;
      ch.note = std::string(to_string(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
      ch.measured = INFINITY;
      ch.note = e.what();
    }
    checks_.push_back(std::move(ch));
  }

  // Fixed-threshold check, independent of the configured tolerances.
  void add_fixed(std::string name, std::string module, double tol, const std::function<double()>& f) {
    add(std::move(name), std::move(module), "fixed", f);
    checks_.back().tolerance = tol;
    checks_.back().pass = checks_.back().measured <= tol;
  }

  void skip(std::string name, std::string module, std::string kind, std::string reason) {
    checks_.push_back({std::move(name), std::move(module), kind, 0, tolerance(kind), true, true, std::move(reason)});
  }

  std::vector<Check> take() {
    std::sort(checks_.begin(), checks_.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    return std::move(checks_);
  }

 private:
  double tolerance(const std::string& kind) const {
    if (kind == "fd") return cfg_.tol_fd;
    if (kind == "trunc") return cfg_.tol_trunc;
    return cfg_.tol_alg;
  }

  RunConfig cfg_;
  std::vector<Check> checks_;
};

}  // namespace

std::vector<Check> run_checks(const RunConfig& cfg) {
  validate(cfg);
  Runner R(cfg);
  const int n = cfg.group_n, N = cfg.cutoff;
  const CartanWeylBasis lie(n);
  const AffineBasis basis(lie, N);
  FactorizationOptions fopts;
  fopts.loop.grid = cfg.grid;
  BracketContext ctx(lie);
  ctx.factor = fopts;
  auto sampler = [&](std::uint64_t offset) { return Sampler(lie, cfg.seed + offset); };
  const bool desk = n <= 3;
  const std::string too_big = "desk-scale limit: group-n > 3";

  // lie_core
  R.add("lie.cartan_weyl_relations", "lie_core", "alg", [&] {
    double w = 0;
    for (const auto& a : lie.roots()) {
      for (int mu = 0; mu < lie.rank(); ++mu) {
        const Matrix c = lie.H(mu) * lie.E(a) - lie.E(a) * lie.H(mu);
        w = std::max(w, maxabs(c - lie.root_value(a, mu) * lie.E(a)));
      }
      const Matrix c = lie.E(a) * lie.E(a.negated()) - lie.E(a.negated()) * lie.E(a);
      w = std::max(w, maxabs(c - lie.coroot(a)));
    }
    return w;
  });
  R.add("lie.cartan_orthonormality", "lie_core", "alg", [&] {
    double w = 0;
    for (int mu = 0; mu < lie.rank(); ++mu)
      for (int nu = 0; nu < lie.rank(); ++nu) w = std::max(w, std::abs(pairing_K(lie.H(mu), lie.H(nu)) - Complex(mu == nu)));
    return w;
  });
  R.add("lie.casimir_and_r_symmetry", "lie_core", "alg", [&] {
    const TensorOperator C = casimir_tensor(lie), r = canonical_r_tensor(lie);
    const TensorOperator expect = swap_operator(n) - TensorOperator::Identity(n * n, n * n) / double(n);
    return std::max({maxabs(C - expect), maxabs(swapped(C, n) - C), maxabs(swapped(r, n) + r)});
  });
  R.add("lie.iwasawa_const", "lie_core", "alg", [&] {
    auto s = sampler(1);
    double w = 0;
    for (int t = 0; t < 5; ++t) {
      const Matrix g = s.random_sl();
      const auto f = iwasawa_const(g);
      w = std::max({w, maxabs(f.k * f.an - g), maxabs(f.k.adjoint() * f.k - Matrix::Identity(n, n))});
    }
    return w;
  });
  R.add("lie.cartan_const", "lie_core", "alg", [&] {
    auto s = sampler(2);
    double w = 0;
    for (int t = 0; t < 5; ++t) {
      const Matrix g = s.random_sl();
      const auto f = cartan_const(g);
      Matrix a = Matrix::Zero(n, n);
      a.diagonal() = f.a.cast<Complex>();
      w = std::max(w, maxabs(f.u_l * a * f.u_r.inverse() - g));
    }
    return w;
  });

  // loop_algebra
  R.add("loop.grid_round_trip", "loop_algebra", "alg", [&] {
    auto s = sampler(3);
    const LoopElement x = s.random_algebra_loop(N);
    return mode_distance(from_grid(to_grid(x, cfg.grid), N), x);
  });
  R.add("loop.cauchy_product", "loop_algebra", "alg", [&] {
    auto s = sampler(4);
    const LoopElement a = s.random_algebra_loop(2), b = s.random_algebra_loop(3);
    LoopElement direct(n);
    for (const auto& [i, x] : a.modes())
      for (const auto& [j, y] : b.modes()) direct.add_to_mode(i + j, x * y);
    return mode_distance(a * b, direct);
  });
  R.add("loop.inverse_residual", "loop_algebra", "alg", [&] {
    auto s = sampler(5);
    const LoopElement g = s.random_Gstar(2, 3);
    return mode_distance(g * inverse(g), LoopElement::identity(n));
  });
  R.add("loop.kappa_multiplicative", "loop_algebra", "alg", [&] {
    auto s = sampler(6);
    const LoopElement y = s.random_algebra_loop(3), z = s.random_algebra_loop(2);
    return mode_distance(kappa_twist(y * z, 0.2, 1), kappa_twist(y, 0.2, 1) * kappa_twist(z, 0.2, 1));
  });
  auto gram = [&](const std::vector<LoopElement>& dual) {
    double w = 0;
    for (int i = 0; i < basis.dimension(); ++i)
      for (int j = 0; j < basis.dimension(); ++j)
        w = std::max(w, std::abs(pairing_D(basis.gstar()[i], dual[j]) - (i == j ? 1.0 : 0.0)));
    return w;
  };
  R.add("loop.gram_gstar_gL", "loop_algebra", "alg", [&] { return gram(basis.gL()); });
  R.add("loop.gram_gstar_gR", "loop_algebra", "alg", [&] { return gram(basis.gR()); });
  R.add("loop.isotropy", "loop_algebra", "alg", [&] {
    double w = 0;
    for (const auto* fam : {&basis.gL(), &basis.gstar(), &basis.gR()})
      for (int i = 0; i < basis.dimension(); ++i)
        for (int j = 0; j < basis.dimension(); ++j) w = std::max(w, std::abs(pairing_D((*fam)[i], (*fam)[j])));
    return w;
  });
  R.add("loop.projector_split", "loop_algebra", "alg", [&] {
    auto s = sampler(7);
    const LoopElement x = combination(basis.gL(), s, n) + combination(basis.gstar(), s, n);
    double w = 0;
    for (auto [p, q] : {std::pair{Projector::PL, Projector::PLStar}, std::pair{Projector::PR, Projector::PRStar}}) {
      const LoopElement px = project(basis, x, p);
      w = std::max({w, mode_distance(px + project(basis, x, q), x), mode_distance(project(basis, px, p), px)});
    }
    return w;
  });

  // factorization
  R.add("factorization.gstar_gl_round_trip", "factorization", "alg", [&] {
    auto s = sampler(10);
    double w = 0;
    for (int t = 0; t < 5; ++t) {
      const LoopElement u = s.random_Gstar(2, 3), v = s.random_GL(2);
      const auto f = factor_Gstar_GL(u * v, fopts);
      w = std::max({w, f.residual, mode_distance(f.u, u), mode_distance(f.v, v)});
    }
    return w;
  });
  R.add("factorization.gr_gstar_round_trip", "factorization", "alg", [&] {
    auto s = sampler(11);
    double w = 0;
    for (int t = 0; t < 5; ++t) {
      const LoopElement v = s.random_GR(2, 3), u = s.random_Gstar(2, 3);
      const auto r = factor_GR_Gstar(v * u, fopts);
      if (!r.ok()) throw Error(ErrorKind::NotInDomain, r.detail);
      w = std::max({w, r.pair.residual, mode_distance(r.pair.u, u), mode_distance(r.pair.v, v)});
    }
    return w;
  });
  R.add("factorization.grid_uniqueness", "factorization", "alg", [&] {
    auto s = sampler(12);
    const LoopElement l = s.random_Gstar(2, 2) * s.random_GL(2);
    FactorizationOptions fine = fopts;
    fine.loop.grid = 4 * cfg.grid;
    fine.min_block = 16;
    const auto a = factor_Gstar_GL(l, fopts), b = factor_Gstar_GL(l, fine);
    return std::max(mode_distance(a.u, b.u), mode_distance(a.v, b.v));
  });
  R.add("factorization.iwasawa_pointwise", "factorization", "alg", [&] {
    auto s = sampler(13);
    return iwasawa_pointwise(s.random_Gstar(2, 2) * s.random_GL(1), fopts.loop).residual;
  });
  R.add("factorization.infty_cartan_round_trip", "factorization", "alg", [&] {
    auto s = sampler(14);
    double w = 0;
    for (int t = 0; t < 3; ++t) {
      const LoopElement kl = s.random_GR(2, 2), kr = s.random_GR(2, 2);
      const CartanPoint ap = s.random_chamber_point(0.3, 0.8);
      const LoopElement sx = compose_phi(kl, ap.exp(lie), kr, fopts);
      const auto tr = infty_cartan(sx, lie, fopts);
      w = std::max({w, tr.residual, (tr.a.phi - ap.phi).cwiseAbs().maxCoeff(), torus_distance(kl, tr.k_l),
                    torus_distance(kr, tr.k_r)});
    }
    return w;
  });

  // rmatrix
  R.add("rmatrix.trig_antisymmetry", "rmatrix", "alg", [&] {
    double w = 0;
    for (double x : {0.4, 1.9, 3.7}) {
      const TensorOperator a = r_trig(lie, x, RForm::Closed()), b = r_trig(lie, -x, RForm::Closed());
      w = std::max(w, maxabs(a + swapped(b, n)));
    }
    return w;
  });
  R.add("rmatrix.dynamical_antisymmetry", "rmatrix", "alg", [&] {
    auto s = sampler(20);
    const TensorOperator r = r_dynamical(lie, s.random_chamber_point());
    return maxabs(r + swapped(r, n));
  });
  auto limit_phi = [&] {
    Eigen::VectorXd phi(lie.rank());
    for (int i = 0; i < lie.rank(); ++i) phi(i) = 0.5 - 0.1 * i;
    return phi;
  };
  R.add("rmatrix.elliptic_limit", "rmatrix", "trunc", [&] { return limit_deviation(lie, limit_phi(), 1.3, -12.0, 1); });
  R.add_fixed("rmatrix.elliptic_limit_monotone", "rmatrix", 1.0, [&] {
    // largest ratio of successive deviations; below 1 means strictly decreasing
    double worst = 0, prev = INFINITY;
    for (double e : {-2.0, -4.0, -6.0, -8.0, -10.0, -12.0}) {
      const double d = limit_deviation(lie, limit_phi(), 1.3, e, 1);
      if (std::isfinite(prev)) worst = std::max(worst, d / prev);
      prev = d;
    }
    return worst;
  });

  // brackets
  const int W = std::max(1, N / 2);
  {
    auto s = sampler(30);
    const auto pts = OraclePoints::sample(s);
    for (const auto& c : registry_cases(pts)) {
      const std::string name = "brackets.registry." + c.name;
      if (!desk) {
        R.skip(name, "brackets", "fd", too_big);
        continue;
      }
      R.add(name, "brackets", "fd", [&, c] { return run_oracle(c, basis, ctx, W).deviation; });
    }
  }
  R.add("brackets.elliptic_reduces_to_dual", "brackets", "trunc", [&] {
    auto s = sampler(31);
    ExchangeArgs args;
    args.A = s.random_sl();
    args.B = s.random_sl();
    args.sigma = 0.9;
    args.sigma_prime = -0.6;
    args.cartan = s.random_chamber_point().inverse();
    args.eps_prime = -12.0;
    args.alcove = args.cartan.inverse().phi / 12.0;
    const TensorOperator ell = exchange_rhs(lie, ExchangeKind::EllipticKK, args) / args.eps_prime;
    const TensorOperator lim = exchange_rhs(lie, ExchangeKind::DualKK, args);
    return maxabs(ell - lim) / std::max(1.0, maxabs(lim));
  });
  R.add("brackets.leibniz_inverse_rule", "brackets", "alg", [&] {
    auto s = sampler(32);
    const Matrix A = s.random_sl() + 4.0 * Matrix::Identity(n, n);
    TensorOperator AB = TensorOperator::Zero(n * n, n * n), ABi = AB;
    const Matrix Ai = A.inverse();
    for (int t = 0; t < 3; ++t) {
      const Matrix a = s.random_sl(), b = s.random_sl();
      AB += kron(a, b);
      ABi += kron(a, -Ai * b * Ai);
    }
    return maxabs(inverse_right(AB, A) - ABi);
  });

  // symplectic
  R.add("symplectic.pi_omega_inverse", "symplectic", "alg", [&] {
    auto s = sampler(40);
    const int d = chart_dimension(basis);
    double w = 0;
    for (int t = 0; t < 5; ++t) {
      const auto a = s.random_chamber_point();
      w = std::max(w, (pi_infty_matrix(basis, a) * omega_infty_matrix(basis, a) - Eigen::MatrixXd::Identity(d, d))
                          .cwiseAbs()
                          .maxCoeff());
    }
    return w;
  });
  const AffineBasis small(lie, 2);
  if (desk) {
    R.add("symplectic.groupoid_form_split", "symplectic", "fd", [&] {
      auto s = sampler(41);
      double w = 0;
      for (int t = 0; t < 2; ++t) {
        const LoopElement kl = s.random_GR(1, 2), kr = s.random_GR(1, 2);
        const CartanPoint a = s.random_chamber_point();
        auto curve = [&](const LoopElement& X1, const LoopElement& X2, const Eigen::VectorXd& d) {
          const auto cl = chiral_curve(kl, a, X1, d), cr = chiral_curve(kr, a, X2, d);
          return DoubleCurve(
              [=, &lie](double x) { return compose_phi(cl.k(x), CartanPoint{cl.phi(x)}.exp(lie), cr.k(x)); });
        };
        const auto Xl = combination(small.gR(), s, n), Xr = combination(small.gR(), s, n);
        const auto Yl = combination(small.gR(), s, n), Yr = combination(small.gR(), s, n);
        const auto dp = random_vec(s, n - 1), dq = random_vec(s, n - 1);
        const double lhs = omega_S(ctx, curve(Xl, Xr, dp), curve(Yl, Yr, dq));
        const double rhs = omega_infty(ctx, chiral_curve(kl, a, Xl, dp), chiral_curve(kl, a, Yl, dq)) -
                           omega_infty(ctx, chiral_curve(kr, a, Xr, dp), chiral_curve(kr, a, Yr, dq));
        w = std::max(w, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
      return w;
    });
    R.add("symplectic.torus_contraction", "symplectic", "fd", [&] {
      auto s = sampler(42);
      const auto k = s.random_GR(1, 2);
      const auto a = s.random_chamber_point();
      const auto dphi = random_vec(s, n - 1);
      const auto v = chiral_curve(k, a, combination(small.gR(), s, n), dphi);
      double w = 0;
      for (int mu = 0; mu < n - 1; ++mu) {
        const auto t = chiral_curve(k, a, small.gR()[mu], Eigen::VectorXd::Zero(n - 1));
        w = std::max(w, std::abs(omega_infty(ctx, v, t) - dphi(mu)));
      }
      return w;
    });
    R.add("symplectic.moment_fields", "symplectic", "fd", [&] {
      auto s = sampler(43);
      const AffineBasis b(lie, 3);
      const LoopElement K = s.random_S(1, 1, 0.2);
      const auto spec = pi_D_infty(b);
      double w = 0;
      for (int i = 0; i < b.dimension(); i += std::max(1, b.dimension() / 4)) {
        const auto V = moment_field(spec, K, b.gR()[i], true, ctx);
        const auto V2 = moment_field(spec, K, b.gL()[i], false, ctx);
        w = std::max({w, (V + b.gR()[i] * K).band(-1, 1).max_abs(), (V2 - K * b.gL()[i]).band(-1, 1).max_abs()});
      }
      return w;
    });
  } else {
    for (const char* name : {"symplectic.groupoid_form_split", "symplectic.torus_contraction", "symplectic.moment_fields"})
      R.skip(name, "symplectic", "fd", too_big);
  }

  // dynamics
  R.add("dynamics.duality_round_trip", "dynamics", "alg", [&] {
    auto s = sampler(50);
    double w = 0;
    for (int t = 0; t < 3; ++t) {
      const ChiralPoint p{s.random_GR(1, 2), s.random_chamber_point()};
      const auto q = duality_U(p, lie, fopts);
      const auto p2 = duality_V(q, lie, fopts);
      w = std::max({w, mode_distance(p2.k, p.k), (p2.a.phi - p.a.phi).cwiseAbs().maxCoeff(),
                    mode_distance(duality_U(p2, lie, fopts).k, q.k)});
    }
    return w;
  });
  if (desk)
    R.add("dynamics.dual_form_pullback", "dynamics", "fd", [&] {
      auto s = sampler(51);
      const ChiralPoint p{s.random_GR(1, 2), s.random_chamber_point()};
      const auto cv = chiral_curve(p.k, p.a, combination(small.gR(), s, n), random_vec(s, n - 1));
      const auto cw = chiral_curve(p.k, p.a, combination(small.gR(), s, n), random_vec(s, n - 1));
      auto push = [&](const ChiralCurve& c) {
        return ChiralCurve{[&, c](double x) { return duality_U(ChiralPoint{c.k(x), CartanPoint{c.phi(x)}}, lie).k; },
                           [c](double x) { return Eigen::VectorXd(-c.phi(x)); }};
      };
      const double om = omega_infty(ctx, cv, cw);
      return std::abs(omega_dual(ctx, push(cv), push(cw)) + om) / std::max(1.0, std::abs(om));
    });
  else
    R.skip("dynamics.dual_form_pullback", "dynamics", "fd", too_big);
  R.add("dynamics.evolution_group_law", "dynamics", "alg", [&] {
    auto s = sampler(52);
    const auto q = duality_U(ChiralPoint{s.random_GR(1, 2), s.random_chamber_point()}, lie, fopts);
    MonodromicField f{s.random_GR(1, 2), 0.2 * random_vec(s, n - 1).cwiseAbs()};
    return std::max(mode_distance(evolve_infty(evolve_infty(q, 0.7, lie), 1.6, lie).k, evolve_infty(q, 2.3, lie).k),
                    mode_distance(evolve_q(evolve_q(f, 0.7, lie), 1.6, lie).k, evolve_q(f, 2.3, lie).k));
  });
  R.add("dynamics.certificate_along_trajectory", "dynamics", "alg", [&] {
    // number of grid times at which the certificate is lost
    auto s = sampler(53);
    const auto q = duality_U(ChiralPoint{s.random_GR(1, 2), s.random_chamber_point()}, lie, fopts);
    int lost = 0;
    for (int j = 0; j < 16; ++j) lost += !evolve_infty(q, 2 * M_PI * j / 16, lie, fopts).certificate.ok();
    return double(lost);
  });
  R.add("dynamics.exchange_invariance", "dynamics", "alg", [&] {
    auto s = sampler(54);
    const auto q = duality_U(ChiralPoint{s.random_GR(1, 2), s.random_chamber_point()}, lie, fopts);
    const double tau = 0.9;
    const auto e = evolve_infty(q, tau, lie, fopts);
    double w = 0;
    for (auto kind : {ExchangeKind::DualKK, ExchangeKind::DualCartanK}) {
      ExchangeArgs x, y;
      x.cartan = y.cartan = q.a;
      x.sigma = 0.4;
      x.sigma_prime = 2.2;
      y.sigma = x.sigma + tau;
      y.sigma_prime = x.sigma_prime + tau;
      x.A = kind == ExchangeKind::DualKK ? q.k(x.sigma) : q.a.exp(lie);
      y.A = kind == ExchangeKind::DualKK ? e.k(y.sigma) : e.a.exp(lie);
      x.B = q.k(x.sigma_prime);
      y.B = e.k(y.sigma_prime);
      w = std::max(w, maxabs(exchange_rhs(lie, kind, x) - exchange_rhs(lie, kind, y)));
    }
    return w;
  });
  R.add("dynamics.monodromic_round_trip", "dynamics", "alg", [&] {
    auto s = sampler(55);
    const MonodromicField f{s.random_GR(2, 2), 0.2 * random_vec(s, n - 1).cwiseAbs()};
    const auto smp = to_samples(f, lie, std::max(32, cfg.grid / 2));
    return mode_distance(from_samples(smp, lie).k, f.k);
  });

  return R.take();
}

CommandResult cmd_suite(const RunConfig& cfg) {
  const auto checks = run_checks(cfg);
  nlohmann::json list = nlohmann::json::array();
  int failed = 0, skipped = 0;
  for (const auto& c : checks) {
    nlohmann::json j = {{"name", c.name},           {"module", c.module}, {"kind", c.kind},
                        {"tolerance", c.tolerance}, {"pass", c.pass},     {"skipped", c.skipped}};
    // JSON has no infinity; a thrown check reports null
    j["measured"] = std::isfinite(c.measured) ? nlohmann::json(c.measured) : nlohmann::json(nullptr);
    if (!c.note.empty()) j["note"] = c.note;
    list.push_back(std::move(j));
    failed += !c.pass;
    skipped += c.skipped;
  }
  nlohmann::json report = {{"schema", kSchema},
                           {"command", "suite"},
                           {"config", to_json(cfg)},
                           {"checks", list},
                           {"summary", {{"total", checks.size()}, {"failed", failed}, {"skipped", skipped}}}};
  return {failed == 0 ? kExitOk : kExitFailure, report.dump(2) + "\n"};
}

}  // namespace loopfactor::cli
