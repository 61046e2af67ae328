#include <cmath>
#include <cstdio>
#include <sstream>

#include "loopfactor/cli/app.hpp"
#include "loopfactor/dynamics.hpp"
#include "loopfactor/error.hpp"
#include "loopfactor/loop_io.hpp"
#include "loopfactor/oracle.hpp"

namespace loopfactor::cli {

using nlohmann::json;

namespace {

json header(const char* command, const RunConfig& cfg) {
  return {{"schema", kSchema}, {"command", command}, {"config", to_json(cfg)}};
}

CommandResult emit(const json& j, int code = kExitOk) { return {code, j.dump(2) + "\n"}; }

FactorizationOptions factor_options(const RunConfig& cfg) {
  FactorizationOptions o;
  o.loop.grid = cfg.grid;
  return o;
}

LoopElement read_input(const std::string& path, int n) {
  if (path.empty()) throw ConfigError("an input loop file is required");
  LoopElement x;
  try {
    x = read_loop_file(path);
  } catch (const Error& e) {
    throw ConfigError(std::string("input ") + path + ": " + e.what());
  }
  if (x.n() != n) throw ConfigError("input loop is " + std::to_string(x.n()) + "x" + std::to_string(x.n()) +
                                    " but group-n is " + std::to_string(n));
  return x;
}

CartanPoint cartan_from(const std::vector<double>& v, int rank, const char* what) {
  if (int(v.size()) != rank)
    throw ConfigError(std::string(what) + " needs " + std::to_string(rank) + " components");
  return CartanPoint{Eigen::Map<const Eigen::VectorXd>(v.data(), rank)};
}

json pair_json(const FactorPair& f) {
  return {{"u", loop_to_json(f.u)},
          {"v", loop_to_json(f.v)},
          {"residual", f.residual},
          {"condition", f.condition},
          {"block_size", f.block_size},
          {"ill_conditioned", f.ill_conditioned}};
}

}  // namespace

CommandResult cmd_factorize(const RunConfig& cfg, const std::string& input, const std::string& which) {
  validate(cfg);
  const CartanWeylBasis lie(cfg.group_n);
  const LoopElement x = read_input(input, cfg.group_n);
  const auto opts = factor_options(cfg);
  json j = header("factorize", cfg);
  j["which"] = which;
  if (which == "gstar-gl") {
    // x = u v, u in G*, v in G_L
    const auto f = factor_Gstar_GL(x, opts);
    j["verdict"] = "Member";
    j["factors"] = pair_json(f);
    return emit(j);
  }
  if (which == "gr-gstar") {
    // x = v u, v in G_R, u in G*
    const auto r = factor_GR_Gstar(x, opts);
    j["verdict"] = r.ok() ? "Member" : "NotInDomain";
    j["condition"] = r.condition;
    if (!r.ok()) {
      j["detail"] = r.detail;
      return emit(j, kExitFailure);
    }
    j["factors"] = pair_json(r.pair);
    return emit(j);
  }
  if (which == "lambda-xi") {
    const auto r = lambda_xi(x, opts);
    j["verdict"] = r.verdict == DomainVerdict::Member ? "Member" : "NotInDomain";
    j["lambda_L"] = loop_to_json(r.lambda_L);
    j["xi_R"] = loop_to_json(r.xi_R);
    if (r.verdict == DomainVerdict::Member) {
      j["lambda_R"] = loop_to_json(r.lambda_R);
      j["xi_L"] = loop_to_json(r.xi_L);
    }
    return emit(j);
  }
  if (which == "infty-cartan") {
    const auto t = infty_cartan(x, lie, opts);
    j["verdict"] = "Member";
    j["k_l"] = loop_to_json(t.k_l);
    j["k_r"] = loop_to_json(t.k_r);
    j["phi"] = std::vector<double>(t.a.phi.data(), t.a.phi.data() + t.a.phi.size());
    j["residual"] = t.residual;
    j["degenerate"] = t.degenerate;
    return emit(j);
  }
  throw ConfigError("unknown factorization '" + which + "'");
}

CommandResult cmd_bracket(const RunConfig& cfg, const BracketRequest& req) {
  validate(cfg);
  const int n = cfg.group_n;
  const CartanWeylBasis lie(n);
  ExchangeKind kind{};
  bool found = false;
  for (auto k : all_exchange_kinds())
    if (req.kind == to_string(k)) {
      kind = k;
      found = true;
    }
  if (!found) throw ConfigError("unknown bracket kind '" + req.kind + "'");

  Sampler s(lie, cfg.seed);
  OraclePoints pts = OraclePoints::sample(s);
  if (!req.point.empty()) pts.g = pts.K = pts.k = read_input(req.point, n);
  if (!req.phi.empty()) pts.a = cartan_from(req.phi, lie.rank(), "phi");

  BracketContext ctx(lie);
  ctx.factor = factor_options(cfg);
  ExchangeArgs args;
  args.sigma = req.sigma;
  args.sigma_prime = req.sigma_prime;
  args.eps_prime = req.eps_prime;
  args.level = req.level;

  json j = header("bracket", cfg);
  j["kind"] = req.kind;
  j["sigma"] = req.sigma;
  j["sigma_prime"] = req.sigma_prime;

  const auto cases = registry_cases(pts);
  const OracleCase* match = nullptr;
  for (const auto& c : cases)
    if (c.kind == kind) {
      match = &c;
      break;
    }
  LoopElement fa, fb;
  if (match) {
    fa = evaluate(match->F, match->point, ctx);
    fb = evaluate(match->G, match->point, ctx);
    args.cartan = match->point.space == PhaseSpace::Chiral ? match->point.cartan() : CartanPoint{};
    if (kind == ExchangeKind::DualCartanK || kind == ExchangeKind::DualKK) args.cartan = pts.a.inverse();
  } else {
    // finite-q kinds act on the dual chiral variables of (k, a)
    const PhasePoint p = PhasePoint::chiral(pts.k, pts.a);
    fa = evaluate(MatrixObservable::of(kind == ExchangeKind::EllipticKK ? ObservableKind::DualK : ObservableKind::DualA),
                  p, ctx);
    fb = evaluate(MatrixObservable::of(ObservableKind::DualK), p, ctx);
    if (req.alcove.empty())
      args.alcove = pts.a.phi / (-double(req.level) * req.eps_prime);
    else
      args.alcove = cartan_from(req.alcove, lie.rank(), "alcove").phi;
  }
  args.A = fa(req.sigma);
  args.B = fb(req.sigma_prime);
  j["matrix"] = matrix_to_json(exchange_rhs(lie, kind, args));
  if (match) {
    const AffineBasis basis(lie, cfg.cutoff);
    const auto r = run_oracle(*match, basis, ctx, std::max(1, cfg.cutoff / 2));
    j["oracle"] = {{"bivector", to_string(match->bivector)}, {"deviation", r.deviation}, {"window", r.window},
                   {"cutoff", r.cutoff}, {"pass", r.deviation <= cfg.tol_fd}};
    return emit(j, r.deviation <= cfg.tol_fd ? kExitOk : kExitFailure);
  }
  j["oracle"] = nullptr;
  return emit(j);
}

CommandResult cmd_limit_study(const RunConfig& cfg, const std::vector<double>& eps_primes,
                              const std::vector<double>& phi, const std::vector<double>& sigmas) {
  validate(cfg);
  const CartanWeylBasis lie(cfg.group_n);
  for (double e : eps_primes)
    if (!(e < 0)) throw ConfigError("eps' values must be negative");
  Eigen::VectorXd p(lie.rank());
  if (phi.empty())
    for (int i = 0; i < lie.rank(); ++i) p(i) = 0.5 - 0.1 * i;
  else
    p = cartan_from(phi, lie.rank(), "phi").phi;
  const std::vector<double> sig = sigmas.empty() ? std::vector<double>{1.3} : sigmas;

  std::ostringstream out;
  out << "eps_prime,sigma,deviation,status\n";
  if (eps_primes.empty()) return {kExitOk, out.str()};
  char buf[96];
  for (double s : sig) {
    std::vector<double> xs, ys;
    for (double e : eps_primes) {
      std::string status = "ok";
      double d = NAN;
      try {
        // the closed-form limit has a pole at coincident points
        if (std::abs(std::sin(s / 2)) < 1e-6) throw Error(ErrorKind::CoincidentPoints, "sigma near 0 mod 2 pi");
        d = limit_deviation(lie, p, s, e, 1);
      } catch (const Error& err) {
        status = to_string(err.kind());
      }
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,", e, s);
      out << buf;
      if (std::isfinite(d)) {
        std::snprintf(buf, sizeof buf, "%.17g", d);
        out << buf;
        if (d > 0) {
          xs.push_back(std::abs(e));
          ys.push_back(std::log(d));
        }
      }
      out << "," << status << "\n";
    }
    // least-squares slope of log(deviation) against |eps'|
    if (xs.size() >= 2) {
      double mx = 0, my = 0;
      for (size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
      mx /= xs.size();
      my /= xs.size();
      double sxy = 0, sxx = 0;
      for (size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
      std::snprintf(buf, sizeof buf, "# sigma=%.17g decay_rate=%.17g\n", s, sxx > 0 ? -sxy / sxx : NAN);
      out << buf;
    } else {
      std::snprintf(buf, sizeof buf, "# sigma=%.17g decay_rate=nan\n", s);
      out << buf;
    }
  }
  return {kExitOk, out.str()};
}

CommandResult cmd_evolve(const RunConfig& cfg, const EvolveRequest& req) {
  validate(cfg);
  if (req.steps < 1) throw ConfigError("steps must be positive");
  const CartanWeylBasis lie(cfg.group_n);
  const LoopElement k = read_input(req.input, cfg.group_n);
  const CartanPoint a = req.phi.empty() ? CartanPoint{Eigen::VectorXd::Zero(lie.rank())}
                                        : cartan_from(req.phi, lie.rank(), "phi");
  const auto opts = factor_options(cfg);
  const DualChiralPoint p0 = make_dual_point(k, a, lie, opts);
  json j = header("evolve", cfg);
  j["tau"] = req.tau;
  j["steps"] = req.steps;
  json snaps = json::array(), log = json::array();
  bool all_ok = true;
  for (int i = 0; i <= req.steps; ++i) {
    const double t = req.tau * i / req.steps;
    const auto p = evolve_infty(p0, t, lie, opts);
    snaps.push_back({{"tau", t}, {"k", loop_to_json(p.k)}});
    log.push_back({{"tau", t},
                   {"verdict", p.certificate.ok() ? "Member" : "NotInDomain"},
                   {"condition", p.certificate.condition},
                   {"detail", p.certificate.detail}});
    all_ok = all_ok && p.certificate.ok();
  }
  j["phi"] = std::vector<double>(a.phi.data(), a.phi.data() + a.phi.size());
  j["snapshots"] = snaps;
  j["certificates"] = log;
  return emit(j, all_ok ? kExitOk : kExitFailure);
}

}  // namespace loopfactor::cli
