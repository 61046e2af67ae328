#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loopfactor/loop.hpp"

namespace loopfactor {

// { "n": int, "modes": { "<k>": [[ [re,im], ... ], ... ] } }
nlohmann::json loop_to_json(const LoopElement& x);
LoopElement loop_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

LoopElement read_loop_file(const std::string& path);
void write_loop_file(const std::string& path, const LoopElement& x);

// Invariant diagnostics reported by the reader.
std::vector<std::string> loop_diagnostics(const LoopElement& x, const LoopOptions& opts = {});

}  // namespace loopfactor
