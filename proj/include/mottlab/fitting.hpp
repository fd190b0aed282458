#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mottlab/chamber.hpp"
#include "mottlab/empirics.hpp"
#include "mottlab/errors.hpp"
#include "mottlab/golden.hpp"

namespace mottlab {

enum class FreeParam { count_scale, source_height, dish_radius, cutoff_radius };

inline std::string to_string(FreeParam p) {
  switch (p) {
    case FreeParam::count_scale: return "count_scale";
    case FreeParam::source_height: return "source_height";
    case FreeParam::dish_radius: return "dish_radius";
    case FreeParam::cutoff_radius: return "cutoff_radius";
  }
  return "?";
}

struct FitConfig {
  std::vector<FreeParam> free_params;
  std::map<FreeParam, std::pair<double, double>> bounds;
  CdfMetric metric = CdfMetric::ks;
  double tolerance = 1e-3;
  int max_evals = 200;
};

struct FitResult {
  std::map<std::string, double> params;
  double objective = 0.0;
  int evals = 0;
  bool converged = false;
};

// Least-squares count scale for a probability-shaped model against count
// data on a common radius set: scale = sum(m*d)/sum(m^2).
inline double fit_count_scale(const std::vector<double>& model_shape,
                              const EmpiricalCDF& data) {
  if (model_shape.size() != data.size()) {
    throw DataError("fit_count_scale: model and data sizes differ");
  }
  double md = 0.0, mm = 0.0;
  for (std::size_t i = 0; i < model_shape.size(); ++i) {
    md += model_shape[i] * data.cumulative[i];
    mm += model_shape[i] * model_shape[i];
  }
  if (mm == 0.0) throw NumericError("fit_count_scale: all-zero model shape");
  return md / mm;
}

namespace detail {

// Probability-shape model CDF tabulated once per geometry on a uniform grid.
inline GridCdf tabulate_shape(const ChamberGeometry& g, int grid_points,
                              double quad_tol) {
  const double r_max = max_planar_extent(g);
  GridCdf grid;
  grid.radii.reserve(grid_points + 1);
  for (int i = 0; i <= grid_points; ++i) {
    grid.radii.push_back(r_max * static_cast<double>(i) / grid_points);
  }
  grid.values = model_cdf(g, grid.radii, quad_tol);
  return grid;
}

// Hard planar cutoff: zero density beyond the cutoff, renormalized.
inline double eval_shape(const GridCdf& grid, double r, double cutoff) {
  const double rc = std::min(r, grid.radii.back());
  if (cutoff <= 0.0 || cutoff >= grid.radii.back()) {
    return eval_grid_cdf(grid, rc);
  }
  const double fc = eval_grid_cdf(grid, cutoff);
  if (fc <= 0.0) return 0.0;
  return std::min(eval_grid_cdf(grid, rc), fc) / fc;
}

inline std::vector<double> shape_at(const GridCdf& grid,
                                    const std::vector<double>& radii,
                                    double cutoff) {
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(eval_shape(grid, r, cutoff));
  return out;
}

inline double scaled_distance(const std::vector<double>& shape,
                              const EmpiricalCDF& data, CdfMetric metric,
                              double* scale_out = nullptr) {
  const double scale = fit_count_scale(shape, data);
  if (scale_out) *scale_out = scale;
  double sup = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const double diff = scale * shape[i] - data.cumulative[i];
    sup = std::max(sup, std::abs(diff));
    sq += diff * diff;
  }
  return metric == CdfMetric::ks
             ? sup
             : std::sqrt(sq / static_cast<double>(shape.size()));
}

}  // namespace detail

// Derivative-free search driver: golden section for one parameter,
// coordinate descent of golden sections for two. The objective is
// re-evaluated from scratch at every point, so the result depends only on
// the inputs, never on evaluation order.
inline FitResult search_minimum(
    const std::vector<FreeParam>& params,
    const std::map<FreeParam, std::pair<double, double>>& bounds,
    double tolerance, int max_evals,
    const std::function<double(const std::map<FreeParam, double>&)>& objective) {
  FitResult res;
  if (params.empty()) {
    res.objective = objective({});
    res.evals = 1;
    res.converged = true;
    return res;
  }
  if (params.size() > 2) {
    throw std::invalid_argument("search_minimum: at most 2 free parameters");
  }
  for (auto p : params) {
    const auto it = bounds.find(p);
    if (it == bounds.end() || !(it->second.first < it->second.second)) {
      throw std::invalid_argument("search_minimum: invalid bounds for " +
                                  to_string(p));
    }
  }

  std::map<FreeParam, double> point;
  for (auto p : params) {
    const auto [lo, hi] = bounds.at(p);
    point[p] = 0.5 * (lo + hi);
  }

  int evals = 0;
  const auto eval_at = [&](FreeParam p, double v) {
    auto pt = point;
    pt[p] = v;
    ++evals;
    return objective(pt);
  };

  double best = 0.0;
  bool converged = false;
  if (params.size() == 1) {
    const auto p = params[0];
    const auto [lo, hi] = bounds.at(p);
    const auto g = golden_minimize([&](double v) { return eval_at(p, v); }, lo,
                                   hi, tolerance, max_evals);
    point[p] = g.x;
    best = g.fx;
    converged = g.converged;
  } else {
    // alternate golden sweeps until both brackets fit in tolerance
    best = std::numeric_limits<double>::infinity();
    const int max_sweeps = 8;
    for (int sweep = 0; sweep < max_sweeps && evals < max_evals; ++sweep) {
      bool all_tight = true;
      for (auto p : params) {
        auto [lo, hi] = bounds.at(p);
        // shrink the bracket around the current iterate after sweep 0
        if (sweep > 0) {
          const double span = (hi - lo) * std::pow(0.5, sweep);
          lo = std::max(lo, point[p] - span);
          hi = std::min(hi, point[p] + span);
        }
        const auto g =
            golden_minimize([&](double v) { return eval_at(p, v); }, lo, hi,
                            tolerance, max_evals - evals);
        point[p] = g.x;
        best = g.fx;
        all_tight = all_tight && g.converged;
      }
      if (all_tight && sweep >= 1) {
        converged = true;
        break;
      }
    }
  }
  res.objective = best;
  res.evals = evals;
  res.converged = converged || evals < max_evals;
  for (auto p : params) res.params[to_string(p)] = point.at(p);
  return res;
}

// Fit the count scale (always, analytically) plus up to two free geometry
// or cutoff parameters against an empirical CDF.
inline FitResult fit_parameters(const FitConfig& cfg,
                                const ChamberGeometry& geometry_template,
                                const EmpiricalCDF& data, int grid_points = 96,
                                double quad_tol = 1e-6) {
  std::vector<FreeParam> search_params;
  for (auto p : cfg.free_params) {
    if (p != FreeParam::count_scale) search_params.push_back(p);
  }

  const auto apply = [&](const std::map<FreeParam, double>& pt) {
    ChamberGeometry g = geometry_template;
    for (const auto& [p, v] : pt) {
      if (p == FreeParam::source_height) {
        if (auto* cyl = std::get_if<CylinderShape>(&g.shape)) {
          g.source.z = cyl->floor_z + v;
        } else {
          g.source.z = v;
        }
      } else if (p == FreeParam::dish_radius) {
        std::get<CylinderShape>(g.shape).dish_radius = v;
      }
    }
    return g;
  };

  double last_scale = 0.0;
  const auto objective = [&](const std::map<FreeParam, double>& pt) {
    const ChamberGeometry g = apply(pt);
    const GridCdf grid = detail::tabulate_shape(g, grid_points, quad_tol);
    double cutoff = 0.0;
    if (const auto it = pt.find(FreeParam::cutoff_radius); it != pt.end()) {
      cutoff = it->second;
    }
    const auto shape = detail::shape_at(grid, data.radii, cutoff);
    return detail::scaled_distance(shape, data, cfg.metric, &last_scale);
  };

  FitResult res = search_minimum(search_params, cfg.bounds, cfg.tolerance,
                                 cfg.max_evals, objective);
  // recompute at the final point so the reported scale matches
  std::map<FreeParam, double> final_pt;
  for (auto p : search_params) final_pt[p] = res.params.at(to_string(p));
  res.objective = objective(final_pt);
  res.params["count_scale"] = last_scale;
  return res;
}

struct CutoffFit {
  double cutoff_mm = 0.0;
  double objective_with = 0.0;
  double objective_without = 0.0;
};

// Scan a hard large-radius cutoff over the data range, re-fitting the count
// scale at each candidate, and report the best cutoff against the
// untruncated fit.
inline CutoffFit fit_cutoff(const EmpiricalCDF& data,
                            const ChamberGeometry& geometry, int scan_points = 240,
                            int grid_points = 96, double quad_tol = 1e-6,
                            CdfMetric metric = CdfMetric::rms) {
  if (data.size() == 0) throw DataError("fit_cutoff: empty data");
  const GridCdf grid = detail::tabulate_shape(geometry, grid_points, quad_tol);

  const auto objective_at = [&](double cutoff) {
    const auto shape = detail::shape_at(grid, data.radii, cutoff);
    return detail::scaled_distance(shape, data, metric);
  };

  CutoffFit res;
  res.objective_without = objective_at(0.0);  // 0 disables the cutoff
  const double lo = data.radii.front();
  const double hi = data.radii.back();
  res.cutoff_mm = hi;
  res.objective_with = res.objective_without;
  for (int i = 0; i <= scan_points; ++i) {
    const double c = lo + (hi - lo) * static_cast<double>(i) / scan_points;
    const double obj = objective_at(c);
    if (obj < res.objective_with) {
      res.objective_with = obj;
      res.cutoff_mm = c;
    }
  }
  return res;
}

}  // namespace mottlab
