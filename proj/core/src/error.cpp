#include "loopfactor/error.hpp"

namespace loopfactor {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::TruncationOverflow: return "TruncationOverflow";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::SpectralFactorizationDiverged: return "SpectralFactorizationDiverged";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::WallSingularity: return "WallSingularity";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::SeriesNotConverged: return "SeriesNotConverged";
    case ErrorKind::CutoffExceeded: return "CutoffExceeded";
    case ErrorKind::MonodromyMismatch: return "MonodromyMismatch";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace loopfactor
