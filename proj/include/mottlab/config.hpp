#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mottlab/chamber.hpp"
#include "mottlab/empirics.hpp"
#include "mottlab/errors.hpp"
#include "mottlab/fitting.hpp"
#include "mottlab/geiger.hpp"
#include "mottlab/geometry.hpp"

namespace mottlab {

inline Vec3 parse_vec3(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw DataError("config: expected a 3-element array for a position");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline ChamberGeometry parse_chamber_geometry(const nlohmann::json& j) {
  ChamberGeometry g;
  const std::string type = j.value("type", "cylinder");
  if (type == "cylinder") {
    g.shape = CylinderShape{j.value("dish_radius", 45.0),
                            j.value("floor_z", 0.0), j.value("ceiling_z", 10.0)};
  } else if (type == "sphere") {
    g.shape = SphereShape{j.value("radius", 30.0)};
  } else {
    throw DataError("config: unknown geometry type '" + type + "'");
  }
  if (j.contains("source")) {
    g.source = parse_vec3(j.at("source"));
  } else if (type == "cylinder") {
    g.source = {0.0, 0.0, std::get<CylinderShape>(g.shape).floor_z + 2.0};
  }
  validate(g);
  return g;
}

inline ScaleParams parse_scale(const nlohmann::json& j) {
  ScaleParams s{j.value("coeff", 1.0), j.value("gamma", 1.0)};
  if (!(s.coeff > 0.0)) throw DataError("config: scale.coeff must be positive");
  if (!(s.gamma > 0.0)) throw DataError("config: scale.gamma must be positive");
  return s;
}

inline GeigerGeometry parse_geiger_geometry(const nlohmann::json& j) {
  GeigerGeometry g;
  g.window_radius_w = j.value("window_radius_w", g.window_radius_w);
  g.window_thickness_z = j.value("window_thickness_z", g.window_thickness_z);
  g.slowing_scale_s = j.value("slowing_scale_s", g.slowing_scale_s);
  g.stopping_distance_l = j.value("stopping_distance_l", g.stopping_distance_l);
  g.source_extent = j.value("source_extent", g.source_extent);
  validate(g);
  return g;
}

inline FreeParam parse_free_param(const std::string& name) {
  if (name == "count_scale") return FreeParam::count_scale;
  if (name == "source_height") return FreeParam::source_height;
  if (name == "dish_radius") return FreeParam::dish_radius;
  if (name == "cutoff_radius") return FreeParam::cutoff_radius;
  throw DataError("config: unknown free parameter '" + name + "'");
}

inline FitConfig parse_fit_config(const nlohmann::json& j) {
  FitConfig cfg;
  for (const auto& name : j.value("free_params", std::vector<std::string>{})) {
    cfg.free_params.push_back(parse_free_param(name));
  }
  if (j.contains("bounds")) {
    for (const auto& [name, b] : j.at("bounds").items()) {
      if (!b.is_array() || b.size() != 2) {
        throw DataError("config: bounds for '" + name + "' must be [lo, hi]");
      }
      cfg.bounds[parse_free_param(name)] = {b[0].get<double>(),
                                            b[1].get<double>()};
    }
  }
  const std::string metric = j.value("metric", "ks");
  if (metric == "ks") {
    cfg.metric = CdfMetric::ks;
  } else if (metric == "rms") {
    cfg.metric = CdfMetric::rms;
  } else {
    throw DataError("config: metric must be 'ks' or 'rms'");
  }
  cfg.tolerance = j.value("tolerance", 1e-3);
  cfg.max_evals = j.value("max_evals", 200);
  if (!(cfg.tolerance > 0.0)) {
    throw DataError("config: tolerance must be positive");
  }
  return cfg;
}

inline ModelKind parse_model_kind(const std::string& name) {
  if (name == "geometric") return ModelKind::geometric;
  if (name == "case_i") return ModelKind::case_i;
  if (name == "case_ii") return ModelKind::case_ii;
  if (name == "case_iii") return ModelKind::case_iii;
  throw DataError("config: unknown model kind '" + name + "'");
}

}  // namespace mottlab
