#pragma once

#include <complex>

namespace loopfactor {

struct SeriesOptions {
  double tol = 1e-15;         // additive size at which summation stops
  long max_terms = 1000000;   // hard cap on summed terms
  double pole_radius = 1e-8;  // distance to a cotangent pole treated as a pole
};

// sigma_{-y}(z, tau) = pi (cot pi z + cot pi y) + 4 pi sum_{m,n>0} e^{2 pi i tau m n} sin 2 pi (m z + n y)
std::complex<double> elliptic_sigma(std::complex<double> y, std::complex<double> z, std::complex<double> tau,
                                    const SeriesOptions& opts = {});

// rho(z, tau) = pi cot pi z + 4 pi sum_{n>0} e^{2 pi i n tau} sin 2 pi n z / (1 - e^{2 pi i n tau})
std::complex<double> elliptic_rho(std::complex<double> z, std::complex<double> tau, const SeriesOptions& opts = {});

}  // namespace loopfactor
