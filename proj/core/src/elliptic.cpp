#include "loopfactor/elliptic.hpp"

#include <cmath>

#include "loopfactor/error.hpp"

namespace loopfactor {

using C = std::complex<double>;

namespace {

void check_tau(C tau) {
  if (!(tau.imag() > 0)) throw Error(ErrorKind::InvalidArgument, "Im tau must be positive");
}

C pi_cot_pi(C z, double radius, const char* what) {
  const C s = std::sin(M_PI * z);
  if (std::abs(s) < radius) throw Error(ErrorKind::PoleProximity, std::string(what) + " is at a cotangent pole");
  return M_PI * std::cos(M_PI * z) / s;
}

}  // namespace

C elliptic_sigma(C y, C z, C tau, const SeriesOptions& opts) {
  check_tau(tau);
  C sum = pi_cot_pi(z, opts.pole_radius, "z") + pi_cot_pi(y, opts.pole_radius, "y");
  const C two_pi_i_tau = 2.0 * M_PI * C(0, 1) * tau;
  C series = 0;
  long terms = 0;
  double previous = INFINITY;
  for (long d = 2;; ++d) {
    double diag_max = 0;
    for (long m = 1; m < d; ++m) {
      const long n = d - m;
      const C e = std::exp(two_pi_i_tau * double(m * n));
      const C w = 2.0 * M_PI * (double(m) * z + double(n) * y);
      series += e * std::sin(w);
      // |sin w| <= cosh(Im w); the bound keeps accidental zeros of sin from ending the sum
      diag_max = std::max(diag_max, std::abs(e) * std::cosh(w.imag()));
      ++terms;
    }
    if (!std::isfinite(diag_max) || !std::isfinite(std::abs(series)))
      throw Error(ErrorKind::SeriesNotConverged, "elliptic sigma series overflowed");
    if (diag_max < opts.tol && diag_max <= previous) break;
    if (terms >= opts.max_terms)
      throw Error(ErrorKind::SeriesNotConverged, "elliptic sigma series exceeded the term cap");
    previous = diag_max;
  }
  return sum + 4.0 * M_PI * series;
}

C elliptic_rho(C z, C tau, const SeriesOptions& opts) {
  check_tau(tau);
  const C lead = pi_cot_pi(z, opts.pole_radius, "z");
  const C q = std::exp(2.0 * M_PI * C(0, 1) * tau);
  C series = 0;
  C qn = 1;
  double previous = INFINITY;
  for (long n = 1;; ++n) {
    qn *= q;
    const C w = 2.0 * M_PI * double(n) * z;
    const C f = qn / (1.0 - qn);
    series += f * std::sin(w);
    const double a = std::abs(f) * std::cosh(w.imag());
    if (!std::isfinite(a)) throw Error(ErrorKind::SeriesNotConverged, "elliptic rho series overflowed");
    if (a < opts.tol && a <= previous) break;
    if (n >= opts.max_terms) throw Error(ErrorKind::SeriesNotConverged, "elliptic rho series exceeded the term cap");
    previous = a;
  }
  return lead + 4.0 * M_PI * series;
}

}  // namespace loopfactor
