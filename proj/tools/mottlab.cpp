// mottlab: cloud-chamber track-statistics simulator/fitter and Geiger
// window-collimation curve toolkit.
//
// Subcommands: chamber-simulate, chamber-fit, geiger-curves.
// Exit codes: 0 success, 2 usage/config error, 3 data error, 4 numerical
// failure.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mottlab/chamber.hpp"
#include "mottlab/config.hpp"
#include "mottlab/empirics.hpp"
#include "mottlab/errors.hpp"
#include "mottlab/fitting.hpp"
#include "mottlab/geiger.hpp"
#include "mottlab/io.hpp"
#include "mottlab/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string formats = "csv,json,svg";
};

std::set<std::string> parse_formats(const std::string& spec) {
  std::set<std::string> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item != "csv" && item != "json" && item != "svg") {
      throw std::invalid_argument("unknown output format '" + item + "'");
    }
    out.insert(item);
  }
  return out;
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mottlab::DataError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw mottlab::DataError("config parse error in " + path + ": " + e.what());
  }
  return j;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

int run_chamber_simulate(const CommonOpts& opts) {
  const json cfg = load_config(opts.config_path);
  const std::size_t n = cfg.value("n", std::size_t{0});
  if (n == 0) {
    std::cerr << "chamber-simulate: n must be positive\n";
    return kExitUsage;
  }
  const auto geom = mottlab::parse_chamber_geometry(cfg.value("geometry", json::object()));
  const auto scale = mottlab::parse_scale(cfg.value("scale", json::object()));
  const int grid_points = cfg.value("cdf_grid_points", 160);

  const auto samples = mottlab::sample_track_starts(n, opts.seed, scale, geom);

  std::ostringstream samples_csv;
  samples_csv << "x_mm,y_mm,z_mm,t_s\n";
  for (const auto& s : samples) {
    samples_csv << fmt(s.position.x) << ',' << fmt(s.position.y) << ','
                << fmt(s.position.z) << ',' << fmt(s.time) << '\n';
  }

  const double r_max = mottlab::max_planar_extent(geom);
  std::vector<double> grid;
  for (int i = 0; i <= grid_points; ++i) {
    grid.push_back(r_max * i / grid_points);
  }
  const auto cdf = mottlab::model_cdf(geom, grid);

  std::ostringstream cdf_csv;
  cdf_csv << "radius_mm,cumulative_count\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cdf_csv << fmt(grid[i]) << ',' << fmt(cdf[i] * static_cast<double>(n))
            << '\n';
  }

  // empirical CDF of the sampled planar radii, in counts
  std::vector<double> radii;
  radii.reserve(samples.size());
  for (const auto& s : samples) radii.push_back(mottlab::planar_radius(s, geom));
  std::sort(radii.begin(), radii.end());

  mottlab::SvgSeries model_series{"model CDF", {}, "#d62728", false};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    model_series.points.emplace_back(grid[i], cdf[i] * static_cast<double>(n));
  }
  mottlab::SvgSeries sample_series{"sampled CDF", {}, "#1f77b4", false};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    sample_series.points.emplace_back(radii[i], static_cast<double>(i + 1));
  }
  std::ostringstream svg;
  mottlab::write_svg_chart(svg, "Track-start CDF", "radius (mm)", "counts",
                           {sample_series, model_series});

  const auto formats = parse_formats(opts.formats);
  fs::create_directories(opts.out_dir);
  const fs::path out(opts.out_dir);
  if (formats.count("csv")) {
    mottlab::atomic_write(out / "samples.csv", samples_csv.str());
    mottlab::atomic_write(out / "model_cdf.csv", cdf_csv.str());
  }
  if (formats.count("svg")) {
    mottlab::atomic_write(out / "chamber_cdf.svg", svg.str());
  }
  return kExitOk;
}

int run_chamber_fit(const CommonOpts& opts, bool cutoff_flag) {
  const json cfg = load_config(opts.config_path);
  if (!cfg.contains("data_csv")) {
    std::cerr << "chamber-fit: config must name data_csv\n";
    return kExitUsage;
  }
  if (!cfg.contains("calibration_mm_per_px")) {
    std::cerr << "chamber-fit: config must give calibration_mm_per_px\n";
    return kExitUsage;
  }
  const std::string data_path = cfg.at("data_csv").get<std::string>();
  const double calibration = cfg.at("calibration_mm_per_px").get<double>();
  double src_x = 0.0, src_y = 0.0;
  if (cfg.contains("source_px")) {
    const auto& sp = cfg.at("source_px");
    src_x = sp.at(0).get<double>();
    src_y = sp.at(1).get<double>();
  }
  const auto geom = mottlab::parse_chamber_geometry(cfg.value("geometry", json::object()));
  const auto fit_cfg = mottlab::parse_fit_config(cfg.value("fit", json::object()));
  const bool with_cutoff = cutoff_flag || cfg.value("cutoff", false);

  std::ifstream data_in(data_path);
  if (!data_in) {
    std::cerr << "chamber-fit: cannot open " << data_path << '\n';
    return kExitData;
  }
  const auto records =
      mottlab::ingest_tracks(data_in, calibration, src_x, src_y);
  const auto data = mottlab::empirical_cdf(records);

  const auto result = mottlab::fit_parameters(fit_cfg, geom, data);

  json out_json;
  out_json["params"] = result.params;
  out_json["objective"] = result.objective;
  out_json["evals"] = result.evals;
  out_json["converged"] = result.converged;
  if (with_cutoff) {
    const auto cut = mottlab::fit_cutoff(data, geom);
    out_json["cutoff"] = {{"cutoff_mm", cut.cutoff_mm},
                          {"objective_with", cut.objective_with},
                          {"objective_without", cut.objective_without}};
  }

  // residuals at the data radii under the fitted scale
  mottlab::ChamberGeometry fitted = geom;
  if (const auto it = result.params.find("source_height");
      it != result.params.end()) {
    if (auto* cyl = std::get_if<mottlab::CylinderShape>(&fitted.shape)) {
      fitted.source.z = cyl->floor_z + it->second;
    } else {
      fitted.source.z = it->second;
    }
  }
  if (const auto it = result.params.find("dish_radius");
      it != result.params.end()) {
    std::get<mottlab::CylinderShape>(fitted.shape).dish_radius = it->second;
  }
  const auto grid = mottlab::detail::tabulate_shape(fitted, 96, 1e-6);
  const double scale = result.params.at("count_scale");
  std::ostringstream resid_csv;
  resid_csv << "radius_mm,data_count,model_count\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double model =
        scale * mottlab::detail::eval_shape(grid, data.radii[i], 0.0);
    resid_csv << fmt(data.radii[i]) << ',' << fmt(data.cumulative[i]) << ','
              << fmt(model) << '\n';
  }

  const auto formats = parse_formats(opts.formats);
  fs::create_directories(opts.out_dir);
  const fs::path out(opts.out_dir);
  if (formats.count("json")) {
    mottlab::atomic_write(out / "fit_result.json", out_json.dump(2) + "\n");
  }
  if (formats.count("csv")) {
    mottlab::atomic_write(out / "residuals.csv", resid_csv.str());
  }
  return kExitOk;
}

int run_geiger_curves(const CommonOpts& opts, bool fit_sz) {
  const json cfg = load_config(opts.config_path);
  const auto geom = mottlab::parse_geiger_geometry(cfg.value("geometry", json::object()));

  std::vector<mottlab::ModelKind> kinds;
  if (cfg.contains("kinds")) {
    for (const auto& k : cfg.at("kinds")) {
      kinds.push_back(mottlab::parse_model_kind(k.get<std::string>()));
    }
  } else {
    kinds = {mottlab::ModelKind::geometric, mottlab::ModelKind::case_i,
             mottlab::ModelKind::case_ii, mottlab::ModelKind::case_iii};
  }

  const double g_min = cfg.value("g_min", 0.0);
  const double g_max = cfg.value("g_max", 40.0);
  const int g_points = cfg.value("g_points", 81);
  const double g_norm = cfg.value("g_norm", 0.0);
  std::vector<double> grid;
  for (int i = 0; i < g_points; ++i) {
    grid.push_back(g_min + (g_max - g_min) * i / (g_points - 1));
  }

  const auto curves = mottlab::normalized_curves(kinds, grid, g_norm, geom);

  std::ostringstream csv;
  csv << "g_mm";
  for (auto k : kinds) csv << ',' << mottlab::to_string(k);
  csv << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << fmt(grid[i]);
    for (auto k : kinds) csv << ',' << fmt(curves.at(k)[i]);
    csv << '\n';
  }

  // optional measured rates for overlay and SZ fitting
  std::vector<std::pair<double, double>> data;
  if (cfg.contains("data_csv")) {
    const std::string path = cfg.at("data_csv").get<std::string>();
    std::ifstream in(path);
    if (!in) {
      std::cerr << "geiger-curves: cannot open " << path << '\n';
      return kExitData;
    }
    std::string line;
    if (!std::getline(in, line) || line.rfind("g_mm,count_rate", 0) != 0) {
      std::cerr << "geiger-curves: " << path
                << ": expected header 'g_mm,count_rate'\n";
      return kExitData;
    }
    long line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string a, b;
      if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) {
        std::cerr << "geiger-curves: " << path << ": line " << line_no
                  << ": expected 2 fields\n";
        return kExitData;
      }
      try {
        data.emplace_back(std::stod(a), std::stod(b));
      } catch (const std::exception&) {
        std::cerr << "geiger-curves: " << path << ": line " << line_no
                  << ": malformed value\n";
        return kExitData;
      }
    }
  }

  const std::vector<std::string> palette = {"#d62728", "#9467bd", "#2ca02c",
                                            "#ff7f0e"};
  std::vector<mottlab::SvgSeries> series;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    mottlab::SvgSeries s{mottlab::to_string(kinds[i]), {},
                         palette[i % palette.size()], false};
    for (std::size_t j = 0; j < grid.size(); ++j) {
      s.points.emplace_back(grid[j], curves.at(kinds[i])[j]);
    }
    series.push_back(std::move(s));
  }
  if (!data.empty()) {
    mottlab::SvgSeries s{"data", {}, "#1f77b4", true};
    double ref = data.front().second;
    for (const auto& [g, rate] : data) {
      if (g <= data.front().first) ref = rate;
    }
    for (const auto& [g, rate] : data) s.points.emplace_back(g, rate / ref);
    series.push_back(std::move(s));
  }
  std::ostringstream svg;
  mottlab::write_svg_chart(svg, "Normalized count rate vs separation",
                           "g (mm)", "normalized rate", series);

  json sz_json;
  if (fit_sz) {
    if (data.empty()) {
      std::cerr << "geiger-curves: --fit-sz requires data_csv in the config\n";
      return kExitUsage;
    }
    double lo = 1.0, hi = 0.9 * geom.stopping_distance_l;
    if (cfg.contains("sz_bounds")) {
      lo = cfg.at("sz_bounds").at(0).get<double>();
      hi = cfg.at("sz_bounds").at(1).get<double>();
    }
    const std::string kind_name = cfg.value("fit_kind", "case_i");
    const auto fit = mottlab::fit_stopping_equiv(
        data, mottlab::parse_model_kind(kind_name), geom, lo, hi);
    sz_json = {{"kind", kind_name},
               {"sz_equiv_mm", fit.sz_equiv_mm},
               {"objective", fit.objective}};
    std::cout << sz_json.dump(2) << '\n';
  }

  const auto formats = parse_formats(opts.formats);
  fs::create_directories(opts.out_dir);
  const fs::path out(opts.out_dir);
  if (formats.count("csv")) {
    mottlab::atomic_write(out / "geiger_curves.csv", csv.str());
  }
  if (formats.count("svg")) {
    mottlab::atomic_write(out / "geiger_curves.svg", svg.str());
  }
  if (fit_sz && formats.count("json")) {
    mottlab::atomic_write(out / "sz_fit.json", sz_json.dump(2) + "\n");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mottlab: cloud-chamber track statistics and Geiger window "
               "collimation models"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool cutoff_flag = false;
  bool fit_sz_flag = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON config file")
        ->required();
    sub->add_option("--seed", opts.seed, "PRNG seed");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--formats", opts.formats,
                    "comma-separated subset of csv,json,svg");
  };

  auto* sim = app.add_subcommand("chamber-simulate",
                                 "sample track starts and emit the model CDF");
  add_common(sim);
  auto* fit = app.add_subcommand("chamber-fit",
                                 "fit scale/geometry/cutoff to measured tracks");
  add_common(fit);
  fit->add_flag("--cutoff", cutoff_flag, "also fit a large-radius cutoff");
  auto* geiger = app.add_subcommand("geiger-curves",
                                    "emit normalized window-collimation curves");
  add_common(geiger);
  geiger->add_flag("--fit-sz", fit_sz_flag,
                   "fit the air-equivalent window slowing distance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) return run_chamber_simulate(opts);
    if (fit->parsed()) return run_chamber_fit(opts, cutoff_flag);
    if (geiger->parsed()) return run_geiger_curves(opts, fit_sz_flag);
  } catch (const mottlab::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const mottlab::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
