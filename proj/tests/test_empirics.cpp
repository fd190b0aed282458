#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mottlab/chamber.hpp"
#include "mottlab/empirics.hpp"

using namespace mottlab;

TEST_CASE("ingest_tracks") {
  SUBCASE("empty body gives empty list") {
    std::istringstream in("frame,x,y\n");
    CHECK(ingest_tracks(in, 0.5, 100.0, 100.0).empty());
  }
  SUBCASE("row at the source maps to the origin") {
    std::istringstream in("frame,x,y\n1,100,200\n");
    const auto recs = ingest_tracks(in, 0.37, 100.0, 200.0);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].x == 0.0);
    CHECK(recs[0].y == 0.0);
  }
  SUBCASE("pixel offset scales by the calibration") {
    std::istringstream in("frame,x,y\n3,110,200\n");
    const auto recs = ingest_tracks(in, 0.5, 100.0, 200.0);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].frame_id == 3);
    CHECK(recs[0].x == doctest::Approx(5.0));
    CHECK(recs[0].y == 0.0);
  }
  SUBCASE("input order preserved") {
    std::istringstream in("frame,x,y\n2,5,0\n1,3,0\n");
    const auto recs = ingest_tracks(in, 1.0, 0.0, 0.0);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].frame_id == 2);
    CHECK(recs[1].frame_id == 1);
  }
  SUBCASE("malformed row names its line") {
    std::istringstream in("frame,x,y\n1,2,3\n2,oops,3\n");
    try {
      ingest_tracks(in, 1.0, 0.0, 0.0);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("bad header rejected") {
    std::istringstream in("a,b,c\n");
    CHECK_THROWS_AS(ingest_tracks(in, 1.0, 0.0, 0.0), DataError);
  }
  SUBCASE("non-positive calibration rejected") {
    std::istringstream in("frame,x,y\n");
    CHECK_THROWS_AS(ingest_tracks(in, 0.0, 0.0, 0.0), DataError);
    std::istringstream in2("frame,x,y\n");
    CHECK_THROWS_AS(ingest_tracks(in2, -1.0, 0.0, 0.0), DataError);
  }
}

TEST_CASE("empirical_cdf") {
  SUBCASE("single record") {
    const auto cdf = empirical_cdf({{1, 3.0, 4.0}});
    REQUIRE(cdf.size() == 1);
    CHECK(cdf.radii[0] == doctest::Approx(5.0));
    CHECK(cdf.cumulative[0] == 1.0);
  }
  SUBCASE("ties kept as repeats") {
    const auto cdf = empirical_cdf({{1, 3.0, 4.0}, {2, -3.0, 4.0}});
    REQUIRE(cdf.size() == 2);
    CHECK(cdf.radii[0] == cdf.radii[1]);
    CHECK(cdf.total() == 2.0);
  }
  SUBCASE("empty input rejected") {
    CHECK_THROWS_AS(empirical_cdf({}), DataError);
  }
  SUBCASE("invariants on random inputs") {
    std::mt19937 rng(17);
    std::normal_distribution<double> g(0.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<TrackRecord> recs;
      const int n = 1 + trial * 13;
      for (int i = 0; i < n; ++i) recs.push_back({i, g(rng), g(rng)});
      const auto cdf = empirical_cdf(recs);
      REQUIRE(cdf.radii.size() == cdf.cumulative.size());
      CHECK(cdf.total() == static_cast<double>(n));
      for (std::size_t i = 1; i < cdf.size(); ++i) {
        CHECK(cdf.radii[i] >= cdf.radii[i - 1]);
        CHECK(cdf.cumulative[i] > cdf.cumulative[i - 1]);
      }
    }
  }
  SUBCASE("within DKW band of a known sampler") {
    const ChamberGeometry sphere{SphereShape{30.0}, Vec3{0.0, 0.0, 0.0}};
    const auto samples =
        sample_track_starts(1000, 77, ScaleParams{1.0, 0.1}, sphere);
    std::vector<TrackRecord> recs;
    for (const auto& s : samples) {
      recs.push_back({0, s.position.x, s.position.y});
    }
    const auto cdf = empirical_cdf(recs);
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(30.0 * i / 60.0);
    const auto model = model_cdf(sphere, grid);
    const double n = static_cast<double>(cdf.size());
    const double band = std::sqrt(std::log(2.0 / 0.01) / (2.0 * n));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double emp =
          static_cast<double>(std::lower_bound(cdf.radii.begin(),
                                               cdf.radii.end(), grid[i]) -
                              cdf.radii.begin()) /
          n;
      CHECK(std::abs(emp - model[i]) < band);
    }
  }
}

TEST_CASE("round trip through the emitted CSV is lossless") {
  const auto cdf = empirical_cdf({{1, 3.0, 4.0}, {2, 1.0, 0.5}, {3, -8.0, 2.0}});
  std::ostringstream out;
  emit_cdf_csv(out, cdf);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "radius_mm,cumulative_count");
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    REQUIRE(std::getline(in, line));
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(0, comma)) ==
          doctest::Approx(cdf.radii[i]).epsilon(1e-6));
    CHECK(std::stod(line.substr(comma + 1)) == cdf.cumulative[i]);
  }
}

TEST_CASE("cdf_distance") {
  EmpiricalCDF data;
  data.radii = {1.0, 2.0, 3.0, 4.0};
  data.cumulative = {1.0, 2.0, 3.0, 4.0};
  GridCdf model{{0.0, 5.0}, {0.0, 5.0}};  // identity line

  SUBCASE("zero against itself") {
    CHECK(cdf_distance(model, data, CdfMetric::ks) == 0.0);
    CHECK(cdf_distance(model, data, CdfMetric::rms) == 0.0);
  }
  SUBCASE("constant offset") {
    GridCdf shifted{{0.0, 5.0}, {2.5, 7.5}};
    CHECK(cdf_distance(shifted, data, CdfMetric::ks) == doctest::Approx(2.5));
    CHECK(cdf_distance(shifted, data, CdfMetric::rms) == doctest::Approx(2.5));
  }
  SUBCASE("step against its shift, brute force over breakpoints") {
    // data radii uniform on [1,4]; model is the same step shifted 1 mm right
    GridCdf step;
    for (int i = 0; i <= 500; ++i) {
      const double r = 5.0 * i / 500.0;
      step.radii.push_back(r);
      double v = 0.0;
      for (double d : data.radii) {
        if (r - 1.0 >= d) v += 1.0;
      }
      step.values.push_back(v);
    }
    double brute = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      brute = std::max(brute, std::abs(eval_grid_cdf(step, data.radii[i]) -
                                       data.cumulative[i]));
    }
    CHECK(cdf_distance(step, data, CdfMetric::ks) == doctest::Approx(brute));
  }
  SUBCASE("symmetry of the ks distance") {
    GridCdf a{{0.0, 5.0}, {1.0, 6.0}};
    // swapping model and data roles: distances over the same points
    double sup = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      sup = std::max(sup, std::abs(eval_grid_cdf(a, data.radii[i]) -
                                   data.cumulative[i]));
    }
    CHECK(cdf_distance(a, data, CdfMetric::ks) == doctest::Approx(sup));
  }
  SUBCASE("grid not covering the data range") {
    GridCdf narrow{{1.5, 3.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(cdf_distance(narrow, data, CdfMetric::ks), DataError);
  }
}
