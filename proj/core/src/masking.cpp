#include "clap/masking.hpp"

#include <algorithm>
#include <cmath>

#include "clap/error.hpp"
#include "clap/png_io.hpp"
#include "clap/rng.hpp"

namespace clap {

// Q3 of a Gaussian sits 0.674 standard deviations above the mean.
constexpr double kQ3Sigmas = 0.674;

SaliencyMask make_mask(int rows, int cols, std::vector<uint8_t> bits) {
  if (rows <= 0 || cols <= 0 || bits.size() != static_cast<size_t>(rows) * cols)
    throw ArgumentError("make_mask: bit buffer does not match shape");
  SaliencyMask m;
  m.rows = rows;
  m.cols = cols;
  m.bits = std::move(bits);
  size_t selected = 0;
  for (auto& b : m.bits) {
    b = b ? 1 : 0;
    selected += b;
  }
  m.selected_fraction = static_cast<double>(selected) / static_cast<double>(m.bits.size());
  return m;
}

double q3_threshold(const AttentionMap& map) {
  if (map.values.v.empty()) throw ArgumentError("q3_threshold: empty map");
  if (!all_finite(map.values)) throw NumericError("q3_threshold: NaN/Inf in map");
  return mean_value(map.values) + kQ3Sigmas * stddev_pop(map.values);
}

SaliencyMask threshold_mask(const AttentionMap& map) {
  const double thr = q3_threshold(map);
  std::vector<uint8_t> bits(map.values.size());
  for (size_t i = 0; i < bits.size(); ++i) bits[i] = map.values.v[i] > thr ? 1 : 0;
  return make_mask(map.values.rows, map.values.cols, std::move(bits));
}

GrayImage mosaic_obfuscate(const GrayImage& image, const SaliencyMask& mask,
                           const MosaicConfig& cfg) {
  const int rows = image.height(), cols = image.width();
  if (mask.rows != rows || mask.cols != cols)
    throw ArgumentError("mosaic_obfuscate: image/mask shape mismatch");
  if (cfg.cell_size < 1 || cfg.cell_size > std::min(rows, cols))
    throw ArgumentError("mosaic_obfuscate: cell_size must be in [1, min(H,W)]");

  Mat2D out = image.pixels;
  const int cs = cfg.cell_size;
  for (int cr = 0; cr < rows; cr += cs) {
    const int r_end = std::min(cr + cs, rows);
    for (int cc = 0; cc < cols; cc += cs) {
      const int c_end = std::min(cc + cs, cols);
      bool touched = false;
      for (int r = cr; r < r_end && !touched; ++r)
        for (int c = cc; c < c_end; ++c)
          if (mask.at(r, c)) {
            touched = true;
            break;
          }
      if (!touched) continue;
      double sum = 0.0;
      for (int r = cr; r < r_end; ++r)
        for (int c = cc; c < c_end; ++c) sum += image.pixels.at(r, c);
      const double mean = sum / ((r_end - cr) * (c_end - cc));
      for (int r = cr; r < r_end; ++r)
        for (int c = cc; c < c_end; ++c) out.at(r, c) = mean;
    }
  }
  return GrayImage{std::move(out)};
}

SaliencyMask random_training_mask(int rows, int cols, const MosaicConfig& cfg,
                                  uint64_t seed) {
  if (rows <= 0 || cols <= 0) throw ArgumentError("random_training_mask: bad shape");
  if (cfg.cell_size < 1 || cfg.cell_size > std::min(rows, cols))
    throw ArgumentError("random_training_mask: cell_size must be in [1, min(H,W)]");

  Rng rng(seed);
  const double target_fraction = rng.uniform(0.05, 0.25);
  const double target_area = target_fraction * rows * cols;

  const int cs = cfg.cell_size;
  const int n_cr = (rows + cs - 1) / cs;
  const int n_cc = (cols + cs - 1) / cs;
  std::vector<int> cells(static_cast<size_t>(n_cr) * n_cc);
  for (size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<int>(i);
  rng.shuffle(cells);

  std::vector<uint8_t> bits(static_cast<size_t>(rows) * cols, 0);
  double area = 0.0;
  for (int cell : cells) {
    if (area >= target_area) break;
    const int cr = (cell / n_cc) * cs;
    const int cc = (cell % n_cc) * cs;
    const int r_end = std::min(cr + cs, rows);
    const int c_end = std::min(cc + cs, cols);
    for (int r = cr; r < r_end; ++r)
      for (int c = cc; c < c_end; ++c) bits[static_cast<size_t>(r) * cols + c] = 1;
    area += (r_end - cr) * (c_end - cc);
  }
  return make_mask(rows, cols, std::move(bits));
}

void write_mask_png(const SaliencyMask& mask, const std::filesystem::path& p) {
  write_png_bilevel(p, mask.rows, mask.cols, mask.bits);
}

SaliencyMask read_mask_png(const std::filesystem::path& p) {
  const DecodedPng png = read_png(p);
  const double maxval = png.bit_depth == 16 ? 65535.0 : 255.0;
  std::vector<uint8_t> bits(static_cast<size_t>(png.rows) * png.cols);
  for (size_t i = 0; i < bits.size(); ++i) {
    double v = 0.0;
    for (int ch = 0; ch < png.channels; ++ch) v += png.samples[i * png.channels + ch];
    bits[i] = (v / (png.channels * maxval)) > 0.5 ? 1 : 0;
  }
  return make_mask(png.rows, png.cols, std::move(bits));
}

}  // namespace clap
