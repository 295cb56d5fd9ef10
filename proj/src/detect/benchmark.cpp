#include "sentinel/detect/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "sentinel/core/hash.hpp"

namespace sentinel::detect {

namespace {

using clock_type = std::chrono::steady_clock;

// Textured frame with a few saturated blobs so the detector does
// representative work. Deterministic in (seed, resolution).
img::ImageBuffer bench_frame(int w, int h, std::uint64_t seed) {
  img::ImageBuffer frame = img::ImageBuffer::make(w, h, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::uint64_t n =
          mix64(hash_combine(seed, static_cast<std::uint64_t>(y) * w + x));
      const int base = 90 + static_cast<int>(n % 40);
      frame.at(x, y, 0) = static_cast<std::uint8_t>(base);
      frame.at(x, y, 1) = static_cast<std::uint8_t>(base + ((n >> 8) % 7));
      frame.at(x, y, 2) = static_cast<std::uint8_t>(base + ((n >> 16) % 7));
    }
  // 8 blobs on a fixed relative grid, radius scaled to the frame.
  const int radius = std::max(3, std::min(w, h) / 80);
  for (int i = 0; i < 8; ++i) {
    const int cx = (w * (2 * i + 1)) / 16;
    const int cy = (h * ((i % 4) + 1)) / 5;
    const std::uint8_t rgb[3][3] = {
        {220, 30, 30}, {30, 200, 40}, {40, 60, 220}};
    const auto& col = rgb[i % 3];
    for (int y = std::max(0, cy - radius); y <= std::min(h - 1, cy + radius); ++y)
      for (int x = std::max(0, cx - radius); x <= std::min(w - 1, cx + radius); ++x)
        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius * radius)
          for (int c = 0; c < 3; ++c) frame.at(x, y, c) = col[c];
  }
  return frame;
}

// Detector wrapper that counts invocations and accumulates detect() time.
class TimingShim : public Detector {
 public:
  explicit TimingShim(Detector& inner) : inner_(inner) {}

  std::vector<DetectionBox> detect(const img::ImageBuffer& image) override {
    const auto t0 = clock_type::now();
    auto result = inner_.detect(image);
    const auto t1 = clock_type::now();
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
    elapsed_ += std::chrono::duration<double, std::milli>(t1 - t0).count();
    return result;
  }
  int native_size() const override { return inner_.native_size(); }
  bool thread_safe() const override { return inner_.thread_safe(); }

  long calls() const { return calls_; }
  double elapsed_ms() const { return elapsed_; }
  void reset() {
    calls_ = 0;
    elapsed_ = 0.0;
  }

 private:
  Detector& inner_;
  std::mutex mu_;
  long calls_ = 0;
  double elapsed_ = 0.0;
};

}  // namespace

std::vector<std::pair<int, int>> table_resolutions() {
  return {{640, 480}, {720, 576}, {1024, 768},
          {1280, 720}, {1920, 1080}, {3840, 1920}};
}

std::vector<TimingRecord> benchmark(
    Detector& detector, const std::vector<std::pair<int, int>>& resolutions,
    bool sliced, const BenchmarkOptions& opts) {
  if (opts.n_runs < 3)
    throw std::invalid_argument("benchmark: n_runs must be >= 3");

  std::vector<TimingRecord> records;
  for (const auto& [w, h] : resolutions) {
    const img::ImageBuffer frame = bench_frame(w, h, opts.scene_seed);
    const TilePlan plan =
        plan_tiles(w, h, std::min(opts.tile_size, std::max(w, h)), opts.overlap);

    TimingShim shim(detector);
    std::vector<double> run_ms(static_cast<std::size_t>(opts.n_runs));
    long total_calls = 0;
    for (int r = 0; r < opts.n_runs; ++r) {
      shim.reset();
      if (sliced)
        detect_sliced(frame, shim, plan, opts.merge_iou);
      else
        detect_whole(frame, shim);
      run_ms[static_cast<std::size_t>(r)] = shim.elapsed_ms();
      total_calls += shim.calls();
    }

    TimingRecord rec;
    rec.width = w;
    rec.height = h;
    rec.sliced = sliced;
    rec.n_runs = opts.n_runs;
    rec.detector_invocations = total_calls;
    double sum = 0.0;
    for (double v : run_ms) sum += v;
    rec.mean_ms = sum / opts.n_runs;
    std::sort(run_ms.begin(), run_ms.end());
    const auto idx = static_cast<std::size_t>(
        std::ceil(0.95 * opts.n_runs)) - 1;
    rec.p95_ms = run_ms[std::min(idx, run_ms.size() - 1)];
    records.push_back(rec);
  }
  return records;
}

std::string benchmark_table_markdown(const std::vector<TimingRecord>& whole,
                                     const std::vector<TimingRecord>& sliced) {
  if (whole.size() != sliced.size())
    throw std::invalid_argument("benchmark table: record count mismatch");
  std::ostringstream out;
  out << "| Resolution | no SAHI | with SAHI |\n";
  out << "| --- | --- | --- |\n";
  out.setf(std::ios::fixed);
  out.precision(1);
  for (std::size_t i = 0; i < whole.size(); ++i) {
    const auto& a = whole[i];
    const auto& b = sliced[i];
    if (a.width != b.width || a.height != b.height)
      throw std::invalid_argument("benchmark table: resolution mismatch");
    out << "| " << a.width << " x " << a.height << " | " << a.mean_ms
        << " | " << b.mean_ms << " |\n";
  }
  return out.str();
}

}  // namespace sentinel::detect
