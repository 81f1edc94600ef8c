#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "sympgrass/experiments.hpp"
#include "sympgrass/io.hpp"

using namespace sympgrass;
namespace fs = std::filesystem;

namespace {

template <typename F>
void expect_error(ErrorCode code, F&& f) {
  try {
    f();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sympgrass_tests";
  fs::create_directories(dir);
  return dir / name;
}

ExperimentConfig small(const std::string& suite, int trials) {
  auto cfg = default_config(suite);
  cfg.trials = trials;
  cfg.seed = 1234;
  return cfg;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

TEST(FrameFile, RoundTripIsBitExact) {
  Rng rng(81);
  const auto l = suites::random_lagrangian(3, rng);
  const auto path = scratch("frame.txt").string();
  write_frame(path, l.frame());
  const Matrix back = read_frame(path);
  EXPECT_EQ(back, l.frame());
  EXPECT_EQ(format_matrix(back).substr(0, 4), "6 3\n");
}

TEST(FrameFile, ParseErrors) {
  expect_error(ErrorCode::InvalidInput, [] { parse_matrix(""); });
  expect_error(ErrorCode::InvalidInput, [] { parse_matrix("2 2\n1 2 3"); });
  expect_error(ErrorCode::InvalidInput, [] { parse_matrix("1 2\n1 x"); });
  expect_error(ErrorCode::InvalidInput, [] { parse_matrix("1 1\n1 2"); });
  expect_error(ErrorCode::IOError, [] { read_frame("/nonexistent/dir/frame.txt"); });
  expect_error(ErrorCode::IOError, [] { write_frame("/nonexistent/dir/frame.txt", Matrix::Zero(1, 1)); });
}

TEST(CurveJson, RoundTrip) {
  Rng rng(82);
  const auto c = suites::random_chart_curve(2, rng, 5, 1.0);
  const Json j = curve_to_json(c);
  ASSERT_EQ(j.size(), 5u);
  EXPECT_TRUE(j[0].contains("t"));
  const auto back = curve_from_json(Json::parse(j.dump()));
  ASSERT_EQ(back.points.size(), c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    EXPECT_EQ(back.times[i], c.times[i]);
    EXPECT_LE(subspace_distance(back.points[i], c.points[i]), 1e-15);
  }
  expect_error(ErrorCode::InvalidInput, [] { curve_from_json(Json::array()); });
  expect_error(ErrorCode::InvalidInput, [] { curve_from_json(Json::parse(R"([{"t": 0}])")); });
}

TEST(DistanceJson, UnavailablePathsAreNull) {
  DistanceReport r;
  r.chart_path.available = true;
  r.chart_path.length = 0.25;
  const Json j = Json::parse(distance_report_to_json(r).dump());
  EXPECT_DOUBLE_EQ(j["chart_path"].get<double>(), 0.25);
  EXPECT_TRUE(j["geodesic_path"].is_null());
  EXPECT_TRUE(j["section_path"].is_null());
  EXPECT_DOUBLE_EQ(j["minimum"].get<double>(), 0.25);
  EXPECT_DOUBLE_EQ(j["section_available"].get<double>(), 0.0);
}

TEST(RunSuite, StrictInclusion) {
  const auto r = run_suite("strict-inclusion", default_config("strict-inclusion"));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.per_trial.size(), 64u);
  EXPECT_LE(r.metrics.at("max_norm_error"), 1e-10);
}

TEST(RunSuite, GeodesicOneDimensional) {
  auto cfg = small("geodesic", 10);
  cfg.n = 1;
  const auto r = run_suite("geodesic", cfg);
  EXPECT_TRUE(r.pass);
}

TEST(RunSuite, EverySuitePassesOnSmallRuns) {
  for (const auto& name : suite_names()) {
    auto cfg = small(name, 3);
    if (cfg.grid_points > 2) cfg.grid_points = 1001;
    const auto r = run_suite(name, cfg);
    EXPECT_TRUE(r.pass) << name;
  }
}

TEST(RunSuite, ConfigErrors) {
  expect_error(ErrorCode::InvalidInput, [] { run_suite("charts", small("charts", 0)); });
  auto bad_n = small("charts", 1);
  bad_n.n = 0;
  expect_error(ErrorCode::InvalidInput, [&] { run_suite("charts", bad_n); });
  auto bad_grid = small("lift", 1);
  bad_grid.grid_points = 1;
  expect_error(ErrorCode::InvalidInput, [&] { run_suite("lift", bad_grid); });
  expect_error(ErrorCode::UsageError, [] { run_suite("no-such-suite", ExperimentConfig{}); });
  expect_error(ErrorCode::UsageError, [] { default_config("no-such-suite"); });
  auto bad_tol = small("charts", 1);
  bad_tol.tolerances["nonsense"] = 1.0;
  expect_error(ErrorCode::UsageError, [&] { run_suite("charts", bad_tol); });
}

TEST(RunSuite, ToleranceOverrideCanFailAReport) {
  auto cfg = small("charts", 5);
  cfg.tolerances["chart"] = 0.0;
  const auto r = run_suite("charts", cfg);
  EXPECT_FALSE(r.pass);
  EXPECT_DOUBLE_EQ(r.config.tolerances.at("chart"), 0.0);
}

TEST(Report, DeterministicJson) {
  const auto cfg = small("metrics", 20);
  EXPECT_EQ(report_json_text(run_suite("metrics", cfg)), report_json_text(run_suite("metrics", cfg)));
  auto other = cfg;
  other.seed = 4321;
  EXPECT_NE(report_json_text(run_suite("metrics", cfg)), report_json_text(run_suite("metrics", other)));
}

TEST(Report, JsonShape) {
  const Json j = Json::parse(report_json_text(run_suite("charts", small("charts", 3))));
  EXPECT_EQ(j["name"], "charts");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["per_trial"].size(), 3u);
  EXPECT_EQ(j["config"]["seed"].get<std::uint64_t>(), 1234u);
  EXPECT_EQ(j["seed_algorithm"].get<std::string>(), std::string(Rng::algorithm));
  EXPECT_TRUE(j["config"]["tolerances"].contains("chart"));
}

TEST(Report, WriteFailsOnBadPath) {
  const auto r = run_suite("strict-inclusion", default_config("strict-inclusion"));
  expect_error(ErrorCode::IOError, [&] { write_report(r, "/nonexistent/dir/report.json"); });
  expect_error(ErrorCode::IOError, [&] { emit_csv(r, "/nonexistent/dir/report.csv"); });
}

TEST(Csv, HeaderOnlyForEmptyReport) {
  ExperimentReport r;
  r.columns = {"a", "b"};
  EXPECT_EQ(csv_text(r), "a,b\n");
}

TEST(Csv, OneLinePerTrialAndExactParseBack) {
  const auto r = run_suite("charts", small("charts", 3));
  const auto path = scratch("charts.csv").string();
  emit_csv(r, path);
  const std::string text = read_text_file(path);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  const auto lines = split(text, '\n');
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(split(lines[0], ','), r.columns);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto cells = split(lines[i + 1], ',');
    ASSERT_EQ(cells.size(), r.per_trial[i].size());
    for (std::size_t c = 0; c < cells.size(); ++c) EXPECT_EQ(std::stod(cells[c]), r.per_trial[i][c]);
  }
}
