#include <fstream>

#include "loopfactor/cli/app.hpp"

namespace loopfactor::cli {

using nlohmann::json;

void validate(const RunConfig& c) {
  if (c.group_n < 2 || c.group_n > 6) throw ConfigError("group-n must lie in [2, 6]");
  if (c.cutoff < 1 || c.cutoff > 12) throw ConfigError("cutoff must lie in [1, 12]");
  if (c.grid < 4 * c.cutoff + 4) throw ConfigError("grid must be at least 4 * cutoff + 4");
  // zero is accepted so that a run can be forced to report every inexact check as failing
  for (double t : {c.tol_alg, c.tol_fd, c.tol_trunc})
    if (!(t >= 0)) throw ConfigError("tolerances must be non-negative");
}

RunConfig merge_config(const json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "group_n") c.group_n = v.get<int>();
      else if (key == "cutoff") c.cutoff = v.get<int>();
      else if (key == "grid") c.grid = v.get<int>();
      else if (key == "tol_alg") c.tol_alg = v.get<double>();
      else if (key == "tol_fd") c.tol_fd = v.get<double>();
      else if (key == "tol_trunc") c.tol_trunc = v.get<double>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "out") c.out = v.get<std::string>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return merge_config(j, std::move(base));
}

json to_json(const RunConfig& c) {
  return {{"group_n", c.group_n}, {"cutoff", c.cutoff},       {"grid", c.grid}, {"tol_alg", c.tol_alg},
          {"tol_fd", c.tol_fd},   {"tol_trunc", c.tol_trunc}, {"seed", c.seed}};
}

}  // namespace loopfactor::cli
