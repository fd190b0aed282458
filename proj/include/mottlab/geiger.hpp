#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mottlab/constants.hpp"
#include "mottlab/errors.hpp"
#include "mottlab/golden.hpp"

namespace mottlab {

// Window and stopping parameters for the counter-window flux models.
// All lengths in mm; slowing_scale_s converts window thickness to
// air-equivalent slowing distance.
struct GeigerGeometry {
  double window_radius_w = 4.5;
  double window_thickness_z = 1.0;
  double slowing_scale_s = 16.0;
  double stopping_distance_l = 38.0;
  double source_extent = 3.0;

  // air-equivalent slowing inside the window
  double sz() const { return slowing_scale_s * window_thickness_z; }
};

inline void validate(const GeigerGeometry& g) {
  if (!(g.window_radius_w > 0.0) || !(g.window_thickness_z > 0.0) ||
      !(g.slowing_scale_s > 0.0) || !(g.stopping_distance_l > 0.0) ||
      !(g.source_extent > 0.0)) {
    throw std::invalid_argument("GeigerGeometry: all parameters must be positive");
  }
  if (g.sz() >= g.stopping_distance_l) {
    throw std::invalid_argument(
        "GeigerGeometry: window slowing must stay below the air stopping "
        "distance");
  }
}

// Collimation hypotheses: at the decaying nucleus (geometric), at the outer
// window surface (case i), at the inner surface (case ii), or inside the
// window (case iii).
enum class ModelKind { geometric, case_i, case_ii, case_iii };

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::geometric: return "geometric";
    case ModelKind::case_i: return "case_i";
    case ModelKind::case_ii: return "case_ii";
    case ModelKind::case_iii: return "case_iii";
  }
  return "?";
}

// Acceptance half-angle of the window cone at source distance g. Not
// defined for case iii, which has no single limiting angle.
inline double theta_limit(ModelKind kind, double g, const GeigerGeometry& geom) {
  if (g < 0.0) throw std::domain_error("theta_limit: g must be >= 0");
  const double arctan_wg =
      g == 0.0 ? 0.5 * pi : std::atan(geom.window_radius_w / g);
  switch (kind) {
    case ModelKind::geometric: {
      const double u = (g + geom.sz()) / geom.stopping_distance_l;
      if (u >= 1.0) return 0.0;
      return std::min(arctan_wg, std::acos(u));
    }
    case ModelKind::case_i: {
      const double u =
          std::min(1.0, geom.sz() / geom.stopping_distance_l);
      return std::min(arctan_wg, std::acos(u));
    }
    case ModelKind::case_ii:
      return arctan_wg;
    case ModelKind::case_iii:
      throw std::invalid_argument("theta_limit: case_iii has no single angle");
  }
  return 0.0;
}

// Unnormalized model flux at source distance g. Cases i/ii diverge at
// contact (g = 0); that is reported as +infinity, never as overflow.
inline double flux(ModelKind kind, double g, const GeigerGeometry& geom) {
  if (g < 0.0) throw std::domain_error("flux: g must be >= 0");
  const double s = geom.sz() / geom.stopping_distance_l;
  switch (kind) {
    case ModelKind::geometric:
      return 1.0 - std::cos(theta_limit(kind, g, geom));
    case ModelKind::case_i:
    case ModelKind::case_ii: {
      const double theta = theta_limit(kind, g, geom);
      if (theta >= 0.5 * pi) return std::numeric_limits<double>::infinity();
      return -std::log(std::cos(theta));
    }
    case ModelKind::case_iii: {
      const double w = geom.window_radius_w;
      const double g_star = w * s / std::sqrt(1.0 - s * s);
      if (g >= g_star) {
        if (g == 0.0) return std::numeric_limits<double>::infinity();
        return s * std::log((g * g + w * w) / (g * g));
      }
      return (s - g / std::sqrt(g * g + w * w)) - s * std::log(s);
    }
  }
  return 0.0;
}

// Midpoint-rule average of the flux over source positions in
// [g, g + source_extent]. Finite for every model at every g >= 0: the log
// divergence at contact is integrable and midpoint nodes avoid endpoints.
inline double source_averaged_flux(ModelKind kind, double g,
                                   const GeigerGeometry& geom,
                                   int n_nodes = 256) {
  if (n_nodes < 1) {
    throw std::invalid_argument("source_averaged_flux: n_nodes must be >= 1");
  }
  const double h = geom.source_extent / n_nodes;
  double sum = 0.0;
  for (int i = 0; i < n_nodes; ++i) {
    sum += flux(kind, g + (i + 0.5) * h, geom);
  }
  return sum / n_nodes;
}

// Curves rescaled so every model takes the value 1 at g_norm. Uses the
// source-averaged flux, which keeps g_norm = 0 admissible.
inline std::map<ModelKind, std::vector<double>> normalized_curves(
    const std::vector<ModelKind>& kinds, const std::vector<double>& g_grid,
    double g_norm, const GeigerGeometry& geom, int n_nodes = 256) {
  if (g_norm < 0.0) {
    throw std::domain_error("normalized_curves: g_norm must be >= 0");
  }
  std::map<ModelKind, std::vector<double>> out;
  for (auto kind : kinds) {
    const double ref = source_averaged_flux(kind, g_norm, geom, n_nodes);
    if (!(ref > 0.0)) {
      throw NumericError("normalized_curves: zero flux at g_norm for model " +
                         to_string(kind));
    }
    std::vector<double> vals;
    vals.reserve(g_grid.size());
    for (double g : g_grid) {
      vals.push_back(source_averaged_flux(kind, g, geom, n_nodes) / ref);
    }
    out[kind] = vals;
  }
  return out;
}

// Size of the case-iii branch mismatch at its printed boundary,
// s*|ln s| with s = SZ/L.
inline double case_iii_branch_jump(const GeigerGeometry& geom) {
  const double s = geom.sz() / geom.stopping_distance_l;
  return s * std::abs(std::log(s));
}

struct StoppingFit {
  double sz_equiv_mm = 0.0;
  double objective = 0.0;
};

// Fit the air-equivalent window slowing distance S*Z against measured
// count rates. Model and data are both normalized at the smallest measured
// g; the objective is the RMS of the normalized residuals.
inline StoppingFit fit_stopping_equiv(
    const std::vector<std::pair<double, double>>& data, ModelKind kind,
    const GeigerGeometry& geom_template, double sz_lo, double sz_hi,
    double tol = 1e-4, int n_nodes = 256) {
  if (data.size() < 3) {
    throw DataError("fit_stopping_equiv: need at least 3 data points");
  }
  if (!(sz_lo < sz_hi)) {
    throw std::invalid_argument("fit_stopping_equiv: invalid bounds");
  }
  std::vector<std::pair<double, double>> pts = data;
  std::sort(pts.begin(), pts.end());
  if (pts.front().first == pts.back().first) {
    throw DataError("fit_stopping_equiv: degenerate data (all g equal)");
  }
  const double g_ref = pts.front().first;
  const double data_ref = pts.front().second;
  if (!(data_ref > 0.0)) {
    throw DataError("fit_stopping_equiv: nonpositive rate at reference g");
  }

  const auto objective = [&](double sz_equiv) {
    GeigerGeometry geom = geom_template;
    geom.slowing_scale_s = sz_equiv / geom.window_thickness_z;
    if (geom.sz() >= geom.stopping_distance_l) {
      return std::numeric_limits<double>::max();
    }
    const double ref = source_averaged_flux(kind, g_ref, geom, n_nodes);
    if (!(ref > 0.0)) return std::numeric_limits<double>::max();
    double sq = 0.0;
    for (const auto& [g, rate] : pts) {
      const double model = source_averaged_flux(kind, g, geom, n_nodes) / ref;
      const double diff = model - rate / data_ref;
      sq += diff * diff;
    }
    return std::sqrt(sq / static_cast<double>(pts.size()));
  };

  const auto g = golden_minimize(objective, sz_lo, sz_hi, tol, 400);
  return {g.x, g.fx};
}

}  // namespace mottlab
