#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "mottlab/constants.hpp"
#include "mottlab/geometry.hpp"
#include "mottlab/quadrature.hpp"

namespace mottlab {

// Lumped track-initiation coefficient (absorbed into counts) and decay rate.
struct ScaleParams {
  double coeff;
  double gamma;
};

struct TrackStart {
  Vec3 position;  // mm
  double time;    // s
};

// Track-initiation density coeff*e^{-gamma t}/(4 pi r^2), zero outside the
// chamber volume.
inline double track_density(const Vec3& x, double t, const ScaleParams& s,
                            const ChamberGeometry& g) {
  const Vec3 d = x - g.source;
  const double r2 = dot(d, d);
  if (r2 == 0.0) throw std::domain_error("track_density: x equals the source");
  if (!contains(g, x)) return 0.0;
  return s.coeff * std::exp(-s.gamma * t) / (4.0 * pi * r2);
}

// Deterministic sampler of the 1/r^2 spatial density on the chamber volume,
// with exponential times. Directions are drawn uniformly on the sphere and
// accepted with probability d_exit/d_max; the radius is then uniform on
// (0, d_exit], which cancels the r^2 volume element.
inline std::vector<TrackStart> sample_track_starts(std::size_t n,
                                                   std::uint64_t seed,
                                                   const ScaleParams& s,
                                                   const ChamberGeometry& g) {
  validate(g);
  const double d_max = max_chord(g);
  if (!(d_max > 0.0)) {
    throw std::invalid_argument("sample_track_starts: geometry has zero volume");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<TrackStart> out;
  out.reserve(n);
  while (out.size() < n) {
    const double cz = 2.0 * unit(rng) - 1.0;
    const double phi = 2.0 * pi * unit(rng);
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    const Vec3 dir{sz * std::cos(phi), sz * std::sin(phi), cz};
    const double d_exit = exit_distance(g, dir);
    if (unit(rng) * d_max > d_exit) continue;
    const double r = d_exit * (1.0 - unit(rng));  // uniform on (0, d_exit]
    if (r <= 0.0) continue;
    std::exponential_distribution<double> exp_t(s.gamma);
    out.push_back({g.source + r * dir, exp_t(rng)});
  }
  return out;
}

// Distance from the source in the horizontal (camera) plane.
inline double planar_radius(const TrackStart& ts, const ChamberGeometry& g) {
  const double dx = ts.position.x - g.source.x;
  const double dy = ts.position.y - g.source.y;
  return std::sqrt(dx * dx + dy * dy);
}

// Model CDF of the planar radius under the 1/r^2 density restricted to the
// geometry. The radial integral is done in closed form (the density cancels
// the volume element); the two angular integrals are adaptive.
//
// Along direction (theta, phi), the planar radius stays below s for ray
// parameter up to s/sin(theta), so the radial mass is
// min(d_exit, s/sin(theta)).
inline std::vector<double> model_cdf(const ChamberGeometry& g,
                                     const std::vector<double>& radii,
                                     double tol = 1e-7) {
  validate(g);
  if (radii.empty()) throw std::invalid_argument("model_cdf: empty radius grid");

  const double scale = max_chord(g);  // turns tol into a relative tolerance
  const auto angular_mass = [&](double s_cap) {
    // s_cap < 0 means "no cap" (total mass)
    const auto outer = [&](double theta) {
      const double st = std::sin(theta);
      const double ct = std::cos(theta);
      const auto inner = [&](double phi) {
        const Vec3 dir{st * std::cos(phi), st * std::sin(phi), ct};
        double m = exit_distance(g, dir);
        if (s_cap >= 0.0 && st > 0.0) m = std::min(m, s_cap / st);
        return m;
      };
      return st * integrate(inner, 0.0, 2.0 * pi, tol * scale);
    };
    return integrate(outer, 0.0, pi, tol * scale * 4.0 * pi);
  };

  const double total = angular_mass(-1.0);
  std::vector<double> out;
  out.reserve(radii.size());
  for (double s : radii) {
    if (s <= 0.0) {
      out.push_back(0.0);
      continue;
    }
    const double m = angular_mass(s);
    double v = std::min(1.0, std::max(0.0, m / total));
    if (!out.empty()) v = std::max(v, out.back());  // quadrature jitter guard
    out.push_back(v);
  }
  return out;
}

}  // namespace mottlab
