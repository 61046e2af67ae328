#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace loopfactor::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitConfig = 3;
inline constexpr const char* kSchema = "loopfactor-report/1";

struct RunConfig {
  int group_n = 2;
  int cutoff = 4;
  int grid = 64;
  double tol_alg = 1e-10;
  double tol_fd = 1e-6;
  double tol_trunc = 1e-6;
  std::uint64_t seed = 2024;
  std::string out;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws ConfigError.
void validate(const RunConfig& c);
// Keys: group_n, cutoff, grid, tol_alg, tol_fd, tol_trunc, seed, out. Unknown keys are rejected.
RunConfig merge_config(const nlohmann::json& j, RunConfig base);
RunConfig load_config_file(const std::string& path, RunConfig base);
nlohmann::json to_json(const RunConfig& c);

struct Check {
  std::string name;
  std::string module;
  std::string kind;  // alg | fd | trunc
  double measured = 0;
  double tolerance = 0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

// Every named invariant of the suite, ordered by name.
std::vector<Check> run_checks(const RunConfig& c);

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;
};

CommandResult cmd_suite(const RunConfig& c);
// which: gstar-gl | gr-gstar | lambda-xi | infty-cartan
CommandResult cmd_factorize(const RunConfig& c, const std::string& input, const std::string& which);

struct BracketRequest {
  std::string kind;
  std::string point;  // loop file; empty means the seeded registry point
  std::vector<double> phi;
  std::vector<double> alcove;
  double sigma = 0.5;
  double sigma_prime = 1.7;
  double eps_prime = -1.0;
  int level = 1;
};
CommandResult cmd_bracket(const RunConfig& c, const BracketRequest& r);

CommandResult cmd_limit_study(const RunConfig& c, const std::vector<double>& eps_primes, const std::vector<double>& phi,
                              const std::vector<double>& sigmas);

struct EvolveRequest {
  std::string input;  // k~ in G_L
  std::vector<double> phi;  // a~ in A_-
  double tau = 0;
  int steps = 1;
};
CommandResult cmd_evolve(const RunConfig& c, const EvolveRequest& r);

// Full command line: parses flags and LOOPFACTOR_CONFIG, dispatches, writes the output.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loopfactor::cli
