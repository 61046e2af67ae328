#pragma once

#include <stdexcept>
#include <string>

namespace loopfactor {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  TruncationOverflow,
  NearSingular,
  SpectralFactorizationDiverged,
  NotInDomain,
  IllConditioned,
  DegenerateSpectrum,
  WallSingularity,
  CoincidentPoints,
  PoleProximity,
  SeriesNotConverged,
  CutoffExceeded,
  MonodromyMismatch,
  Overflow,
  ParseError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace loopfactor
