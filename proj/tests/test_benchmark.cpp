#include <doctest.h>

#include <sstream>
#include <string>

#include "sentinel/detect/benchmark.hpp"
#include "sentinel/detect/reference_detector.hpp"

using namespace sentinel::detect;

TEST_CASE("table_resolutions lists six ascending-px entries") {
  const auto res = table_resolutions();
  REQUIRE(res.size() == 6);
  long prev = 0;
  for (const auto& [w, h] : res) {
    const long px = static_cast<long>(w) * h;
    CHECK(px > prev);
    prev = px;
  }
  CHECK(res.front() == std::pair<int, int>{640, 480});
  CHECK(res.back() == std::pair<int, int>{3840, 1920});
}

TEST_CASE("benchmark returns one record per resolution with counted calls") {
  ReferenceDetector det = ReferenceDetector::with_default_classes();
  BenchmarkOptions opts;
  opts.n_runs = 3;
  const std::vector<std::pair<int, int>> small = {{320, 240}, {700, 500}};

  const auto whole = benchmark(det, small, false, opts);
  REQUIRE(whole.size() == 2);
  for (const auto& r : whole) {
    CHECK(r.n_runs == 3);
    CHECK_FALSE(r.sliced);
    CHECK(r.detector_invocations == 3);  // one call per run
    CHECK(r.mean_ms >= 0.0);
  }

  const auto sliced = benchmark(det, small, true, opts);
  REQUIRE(sliced.size() == 2);
  // 320x240 fits one tile; 700x500 needs 2 tiles along x.
  CHECK(sliced[0].detector_invocations == 3);
  CHECK(sliced[1].detector_invocations == 6);
}

TEST_CASE("sliced invocations strictly increase across published resolutions") {
  ReferenceDetector det = ReferenceDetector::with_default_classes(64);
  BenchmarkOptions opts;
  opts.n_runs = 3;
  opts.tile_size = 640;
  opts.overlap = 128;
  const auto recs = benchmark(det, table_resolutions(), true, opts);
  REQUIRE(recs.size() == 6);
  long prev = 0;
  for (const auto& r : recs) {
    CHECK(r.detector_invocations > prev);
    prev = r.detector_invocations;
  }
}

TEST_CASE("markdown table has the published row and column shape") {
  ReferenceDetector det = ReferenceDetector::with_default_classes(64);
  BenchmarkOptions opts;
  opts.n_runs = 3;
  const std::vector<std::pair<int, int>> res = {{320, 240}, {640, 360}};
  const auto whole = benchmark(det, res, false, opts);
  const auto sliced = benchmark(det, res, true, opts);
  const std::string table = benchmark_table_markdown(whole, sliced);

  std::istringstream lines(table);
  std::string line;
  int rows = 0, header_cols = 0;
  while (std::getline(lines, line)) {
    if (rows == 0) {
      for (char c : line) header_cols += c == '|';
      CHECK(line.find("no SAHI") != std::string::npos);
      CHECK(line.find("with SAHI") != std::string::npos);
      CHECK(line.find("Resolution") != std::string::npos);
    }
    ++rows;
  }
  CHECK(header_cols == 4);  // three columns
  CHECK(rows == 2 + 2);     // header + separator + one row per resolution
  CHECK(table.find("320 x 240") != std::string::npos);
}

TEST_CASE("benchmark enforces the minimum run count") {
  ReferenceDetector det = ReferenceDetector::with_default_classes();
  BenchmarkOptions opts;
  opts.n_runs = 2;
  CHECK_THROWS_AS(benchmark(det, {{64, 64}}, false, opts),
                  std::invalid_argument);
}
