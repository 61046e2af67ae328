#include "loopfactor/loop_io.hpp"

#include <cmath>
#include <fstream>

#include "loopfactor/error.hpp"

namespace loopfactor {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, "matrix must be a non-empty array of rows");
  const int r = int(j.size());
  const int c = int(j[0].size());
  Matrix m(r, c);
  for (int a = 0; a < r; ++a) {
    if (!j[a].is_array() || int(j[a].size()) != c) throw Error(ErrorKind::ParseError, "ragged matrix rows");
    for (int b = 0; b < c; ++b) {
      const json& e = j[a][b];
      if (e.is_number())
        m(a, b) = Complex(e.get<double>(), 0);
      else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        m(a, b) = Complex(e[0].get<double>(), e[1].get<double>());
      else
        throw Error(ErrorKind::ParseError, "matrix entries must be [re, im] pairs");
    }
  }
  return m;
}

json loop_to_json(const LoopElement& x) {
  json modes = json::object();
  for (const auto& [k, m] : x.modes()) modes[std::to_string(k)] = matrix_to_json(m);
  return json{{"n", x.n()}, {"modes", modes}};
}

LoopElement loop_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("modes"))
    throw Error(ErrorKind::ParseError, "loop JSON needs \"n\" and \"modes\"");
  const int n = j.at("n").get<int>();
  if (n < 2) throw Error(ErrorKind::ParseError, "loop JSON: n must be >= 2");
  LoopElement x(n);
  for (const auto& [key, val] : j.at("modes").items()) {
    int k = 0;
    try {
      size_t pos = 0;
      k = std::stoi(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "mode key is not an integer: " + key);
    }
    const Matrix m = matrix_from_json(val);
    if (m.rows() != n || m.cols() != n) throw Error(ErrorKind::ParseError, "mode " + key + " has wrong size");
    x.set_mode(k, m);
  }
  return x;
}

LoopElement read_loop_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return loop_from_json(j);
}

void write_loop_file(const std::string& path, const LoopElement& x) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << loop_to_json(x).dump(2) << "\n";
}

std::vector<std::string> loop_diagnostics(const LoopElement& x, const LoopOptions& opts) {
  std::vector<std::string> out;
  const int M = grid_for_degree(x.degree(), opts);
  const auto g = to_grid(x, M);
  double min_det = 1e300;
  for (const auto& m : g) min_det = std::min(min_det, std::abs(m.determinant()));
  const double scale = std::max(1.0, x.max_abs());
  if (!(min_det > 1e-10 * std::pow(scale, x.n())))
    out.push_back("not invertible on grid: min |det| = " + std::to_string(min_det));
  const double round_trip = mode_distance(from_grid(g, M / 2 - 1), x);
  if (round_trip > 1e-12 * scale) out.push_back("grid round trip error " + std::to_string(round_trip));
  return out;
}

}  // namespace loopfactor
