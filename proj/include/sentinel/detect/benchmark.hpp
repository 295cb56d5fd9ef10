/// Latency harness: times the detector across camera resolutions with and
/// without slicing, mirroring the row/column shape of the published
/// comparison. Absolute numbers depend on the host machine.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sentinel/detect/detection.hpp"

namespace sentinel::detect {

struct TimingRecord {
  int width = 0;
  int height = 0;
  bool sliced = false;
  double mean_ms = 0.0;
  double p95_ms = 0.0;
  int n_runs = 0;
  long detector_invocations = 0;  // total detect() calls across runs
};

struct BenchmarkOptions {
  int n_runs = 3;
  int tile_size = 640;
  int overlap = 128;
  double merge_iou = 0.5;
  std::uint64_t scene_seed = 7;
};

/// The six resolutions of the published latency table, ascending pixel count.
std::vector<std::pair<int, int>> table_resolutions();

/// Time detect_whole (sliced=false) or detect_sliced (sliced=true) on a
/// deterministic synthetic frame per resolution. The clock wraps detector
/// calls only, not frame synthesis or merging. n_runs >= 3.
std::vector<TimingRecord> benchmark(Detector& detector,
                                    const std::vector<std::pair<int, int>>& resolutions,
                                    bool sliced, const BenchmarkOptions& opts);

/// Markdown table, one row per resolution: | Resolution | no SAHI | with
/// SAHI |. Both record lists must cover the same resolutions in order.
std::string benchmark_table_markdown(const std::vector<TimingRecord>& whole,
                                     const std::vector<TimingRecord>& sliced);

}  // namespace sentinel::detect
