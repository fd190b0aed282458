#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mottlab/constants.hpp"
#include "mottlab/quadrature.hpp"

namespace mottlab {

// Parameters of the decaying-resonance alpha state: decay e-folding rate
// gamma (1/s), alpha speed v (mm/s), wavenumber k (1/mm).
struct GamowParams {
  double gamma;
  double v;
  double k;
};

enum class FluxMode { exact, asymptotic };

// Decaying-resonance amplitude at distance r (mm) from the source and time
// t (s). Supported on r <= v*t; the global phase is fixed to 1 on the
// causal shell r = v*t.
inline std::complex<double> eval_amplitude(double r, double t,
                                           const GamowParams& p) {
  if (r <= 0.0) throw std::domain_error("eval_amplitude: r must be positive");
  if (r > p.v * t) return {0.0, 0.0};
  const double u = r / p.v - t;  // <= 0 inside the support
  const double mag = std::exp(u * p.gamma / 2.0) / r *
                     std::sqrt(p.gamma / (4.0 * pi * p.v));
  const double phase = u * p.k * p.v;
  return std::polar(mag, phase);
}

// Radial quadrature of 4*pi*r^2*|psi|^2 over (0, v*t]. Equals 1 - e^{-gamma*t}.
inline double total_square_norm(double t, const GamowParams& p,
                                double tol = 1e-10) {
  if (t < 0.0) throw std::domain_error("total_square_norm: t must be >= 0");
  if (t == 0.0) return 0.0;
  const auto integrand = [&](double r) {
    if (r <= 0.0) return p.gamma / p.v * std::exp(-p.gamma * t);
    const std::complex<double> psi = eval_amplitude(r, t, p);
    return 4.0 * pi * r * r * std::norm(psi);
  };
  return integrate(integrand, 0.0, p.v * t, tol);
}

// Outward square-norm flux magnitude (1/(mm^2 s)). Exact mode is the
// identity v*|psi|^2; asymptotic mode is gamma*e^{-gamma t}/(4 pi r^2).
inline double flux_magnitude(double r, double t, const GamowParams& p,
                             FluxMode mode) {
  if (r <= 0.0) throw std::domain_error("flux_magnitude: r must be positive");
  switch (mode) {
    case FluxMode::exact:
      return p.v * std::norm(eval_amplitude(r, t, p));
    case FluxMode::asymptotic:
      return p.gamma * std::exp(-p.gamma * t) / (4.0 * pi * r * r);
  }
  return 0.0;  // unreachable
}

}  // namespace mottlab
