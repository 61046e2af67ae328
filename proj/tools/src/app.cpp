#include <cstdlib>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "loopfactor/cli/app.hpp"
#include "loopfactor/error.hpp"

namespace loopfactor::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics of the quasitriangular WZW model at q -> infinity"};
  app.require_subcommand(1);

  RunConfig flags;
  auto* o_n = app.add_option("--group-n", flags.group_n, "rank + 1 of SU(n)");
  auto* o_cut = app.add_option("--cutoff", flags.cutoff, "mode cutoff N");
  auto* o_grid = app.add_option("--grid", flags.grid, "sample grid size M");
  auto* o_alg = app.add_option("--tol-alg", flags.tol_alg, "tolerance of algebraic checks");
  auto* o_fd = app.add_option("--tol-fd", flags.tol_fd, "tolerance of finite-difference checks");
  auto* o_trunc = app.add_option("--tol-trunc", flags.tol_trunc, "tolerance of truncation and limit checks");
  auto* o_seed = app.add_option("--seed", flags.seed, "random seed");
  auto* o_out = app.add_option("--out", flags.out, "output file (default stdout)");

  auto* suite = app.add_subcommand("suite", "run every named invariant and emit a JSON report");

  auto* fact = app.add_subcommand("factorize", "factorize a loop read from JSON");
  std::string input, which = "gstar-gl";
  fact->add_option("--input", input, "loop JSON file")->required();
  fact->add_option("--which", which, "gstar-gl | gr-gstar | lambda-xi | infty-cartan");

  auto* br = app.add_subcommand("bracket", "closed-form exchange matrix and its bivector oracle");
  BracketRequest breq;
  br->add_option("--kind", breq.kind, "exchange kind, e.g. ka-ka or a-lambda")->required();
  br->add_option("--point", breq.point, "loop JSON file for the phase-space point");
  br->add_option("--phi", breq.phi, "Cartan coordinates of a")->delimiter(',');
  br->add_option("--alcove", breq.alcove, "alcove coordinates (finite-q kinds)")->delimiter(',');
  br->add_option("--sigma", breq.sigma);
  br->add_option("--sigma-prime", breq.sigma_prime);
  br->add_option("--eps-prime", breq.eps_prime);
  br->add_option("--level", breq.level);

  auto* lim = app.add_subcommand("limit-study", "deviation of the elliptic r-matrix from its q -> infinity limit");
  std::vector<double> eps_list, phi, sigma_list;
  lim->add_option("--eps", eps_list, "eps' values (negative)")->delimiter(',')->allow_extra_args(false);
  lim->add_option("--phi", phi, "Cartan coordinates")->delimiter(',');
  lim->add_option("--sigma", sigma_list, "angles")->delimiter(',');

  auto* ev = app.add_subcommand("evolve", "evolve dual chiral variables and certify each snapshot");
  EvolveRequest ereq;
  ev->add_option("--input", ereq.input, "loop JSON file for k~")->required();
  ev->add_option("--phi", ereq.phi, "Cartan coordinates of a~")->delimiter(',');
  ev->add_option("--tau", ereq.tau)->required();
  ev->add_option("--steps", ereq.steps);

  for (auto* sub : {suite, fact, br, lim, ev}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  CommandResult res;
  RunConfig cfg;
  try {
    if (const char* path = std::getenv("LOOPFACTOR_CONFIG"); path && *path) cfg = load_config_file(path, cfg);
    // explicit flags win over the config file
    if (o_n->count()) cfg.group_n = flags.group_n;
    if (o_cut->count()) cfg.cutoff = flags.cutoff;
    if (o_grid->count()) cfg.grid = flags.grid;
    if (o_alg->count()) cfg.tol_alg = flags.tol_alg;
    if (o_fd->count()) cfg.tol_fd = flags.tol_fd;
    if (o_trunc->count()) cfg.tol_trunc = flags.tol_trunc;
    if (o_seed->count()) cfg.seed = flags.seed;
    if (o_out->count()) cfg.out = flags.out;
    validate(cfg);

    if (suite->parsed()) res = cmd_suite(cfg);
    else if (fact->parsed()) res = cmd_factorize(cfg, input, which);
    else if (br->parsed()) res = cmd_bracket(cfg, breq);
    else if (lim->parsed()) res = cmd_limit_study(cfg, eps_list, phi, sigma_list);
    else res = cmd_evolve(cfg, ereq);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitFailure;
  }

  if (cfg.out.empty()) {
    out << res.output;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "cannot write " << cfg.out << "\n";
      return kExitConfig;
    }
    f << res.output;
  }
  return res.exit_code;
}

}  // namespace loopfactor::cli
