#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mottlab/errors.hpp"

namespace mottlab {

// One measured track start in calibrated image-plane coordinates (mm,
// relative to the source).
struct TrackRecord {
  long frame_id = 0;
  double x = 0.0;
  double y = 0.0;
};

// Cumulative counts of planar track-start radii; radii sorted ascending,
// ties kept as repeats, cumulative[i] = i + 1.
struct EmpiricalCDF {
  std::vector<double> radii;
  std::vector<double> cumulative;

  std::size_t size() const { return radii.size(); }
  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

// A model CDF tabulated on a radius grid (probability or count units).
struct GridCdf {
  std::vector<double> radii;
  std::vector<double> values;
};

enum class CdfMetric { ks, rms };

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Read `frame,x,y` pixel rows and convert to mm relative to the source
// position in the image. Input order is preserved.
inline std::vector<TrackRecord> ingest_tracks(std::istream& in,
                                              double calibration_mm_per_px,
                                              double source_x_px,
                                              double source_y_px) {
  if (!(calibration_mm_per_px > 0.0)) {
    throw DataError("ingest_tracks: calibration must be positive");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("ingest_tracks: missing header line");
  }
  {
    auto fields = detail::split_csv_line(line);
    if (fields.size() < 3 || detail::trim(fields[0]) != "frame" ||
        detail::trim(fields[1]) != "x" || detail::trim(fields[2]) != "y") {
      throw DataError("ingest_tracks: expected header 'frame,x,y'");
    }
  }
  std::vector<TrackRecord> out;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto fields = detail::split_csv_line(line);
    if (fields.size() < 3) {
      throw DataError("ingest_tracks: line " + std::to_string(line_no) +
                      ": expected 3 fields");
    }
    TrackRecord rec;
    try {
      std::size_t pos = 0;
      rec.frame_id = std::stol(detail::trim(fields[0]), &pos);
      rec.x = (std::stod(detail::trim(fields[1])) - source_x_px) *
              calibration_mm_per_px;
      rec.y = (std::stod(detail::trim(fields[2])) - source_y_px) *
              calibration_mm_per_px;
    } catch (const std::exception&) {
      throw DataError("ingest_tracks: line " + std::to_string(line_no) +
                      ": malformed value");
    }
    if (!std::isfinite(rec.x) || !std::isfinite(rec.y)) {
      throw DataError("ingest_tracks: line " + std::to_string(line_no) +
                      ": non-finite coordinate");
    }
    out.push_back(rec);
  }
  return out;
}

inline EmpiricalCDF empirical_cdf(const std::vector<TrackRecord>& records) {
  if (records.empty()) throw DataError("empirical_cdf: no records");
  EmpiricalCDF cdf;
  cdf.radii.reserve(records.size());
  for (const auto& r : records) {
    cdf.radii.push_back(std::sqrt(r.x * r.x + r.y * r.y));
  }
  std::sort(cdf.radii.begin(), cdf.radii.end());
  cdf.cumulative.resize(cdf.radii.size());
  for (std::size_t i = 0; i < cdf.radii.size(); ++i) {
    cdf.cumulative[i] = static_cast<double>(i + 1);
  }
  return cdf;
}

// Linear interpolation of a tabulated CDF; the grid must cover r.
inline double eval_grid_cdf(const GridCdf& model, double r) {
  if (model.radii.empty()) throw DataError("eval_grid_cdf: empty grid");
  if (r < model.radii.front() || r > model.radii.back()) {
    throw DataError("eval_grid_cdf: radius outside model grid range");
  }
  const auto it =
      std::lower_bound(model.radii.begin(), model.radii.end(), r);
  const std::size_t hi = static_cast<std::size_t>(it - model.radii.begin());
  if (hi == 0) return model.values.front();
  const std::size_t lo = hi - 1;
  const double span = model.radii[hi] - model.radii[lo];
  if (span <= 0.0) return model.values[hi];
  const double w = (r - model.radii[lo]) / span;
  return (1.0 - w) * model.values[lo] + w * model.values[hi];
}

// Model-data distance over the data radii: sup-difference (ks) or
// root-mean-square (rms), in the units of the inputs.
inline double cdf_distance(const GridCdf& model, const EmpiricalCDF& data,
                           CdfMetric metric) {
  if (data.size() == 0) throw DataError("cdf_distance: empty data CDF");
  double sup = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double diff =
        eval_grid_cdf(model, data.radii[i]) - data.cumulative[i];
    sup = std::max(sup, std::abs(diff));
    sq += diff * diff;
  }
  return metric == CdfMetric::ks ? sup
                                 : std::sqrt(sq / static_cast<double>(data.size()));
}

inline void emit_cdf_csv(std::ostream& out, const EmpiricalCDF& cdf) {
  const auto saved = out.precision(12);
  out << "radius_mm,cumulative_count\n";
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    out << cdf.radii[i] << ',' << cdf.cumulative[i] << '\n';
  }
  out.precision(saved);
}

}  // namespace mottlab
