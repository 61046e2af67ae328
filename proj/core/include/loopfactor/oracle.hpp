#pragma once

#include <string>
#include <vector>

#include "loopfactor/bivector.hpp"
#include "loopfactor/exchange.hpp"
#include "loopfactor/sampling.hpp"

namespace loopfactor {

// One bivector/observable pair with its closed-form right-hand side.
struct OracleCase {
  std::string name;
  BivectorKind bivector = BivectorKind::PiStar;
  MatrixObservable F, G;
  PhasePoint point;
  ExchangeKind kind = ExchangeKind::UpsilonUpsilon;
  double sign = 1.0;  // -1 compares minus the bracket (dual variables)
};

struct OracleResult {
  std::string name;
  double deviation = 0;
  int cutoff = 0;
  int window = 0;
  double seconds = 0;
};

// Points used by the registry: g in G*, K in S_infinity, (k, a) in M_infinity.
struct OraclePoints {
  LoopElement g, K, k;
  CartanPoint a;

  static OraclePoints sample(Sampler& s);
};

std::vector<OracleCase> registry_cases(const OraclePoints& pts);

// Mode-window comparison with cutoff-consistent series r; the window is |m|, |m'| <= W.
OracleResult run_oracle(const OracleCase& c, const AffineBasis& basis, const BracketContext& ctx, int W,
                        DerivativeMethod method = DerivativeMethod::Auto);

}  // namespace loopfactor
