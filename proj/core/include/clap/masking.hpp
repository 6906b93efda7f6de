#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "clap/attention.hpp"
#include "clap/image.hpp"

namespace clap {

// Boolean pixel selection of suspected-lesion regions.
struct SaliencyMask {
  int rows = 0;
  int cols = 0;
  std::vector<uint8_t> bits;  // rows*cols, nonzero = selected
  double selected_fraction = 0.0;

  bool at(int r, int c) const { return bits[static_cast<size_t>(r) * cols + c] != 0; }
};

SaliencyMask make_mask(int rows, int cols, std::vector<uint8_t> bits);

struct MosaicConfig {
  int cell_size = 8;
};

// mu + 0.674*sigma over the map values (population standard deviation);
// the third-quartile point of a Gaussian.
double q3_threshold(const AttentionMap& map);

// Bit set iff the value is strictly greater than q3_threshold(map), so a
// constant map yields an empty mask.
SaliencyMask threshold_mask(const AttentionMap& map);

// Partition the image into cell_size x cell_size cells (trailing cells may
// be smaller) and replace every cell touching the mask by its mean
// intensity. Pixels in untouched cells are bitwise unchanged.
GrayImage mosaic_obfuscate(const GrayImage& image, const SaliencyMask& mask,
                           const MosaicConfig& cfg);

// Training-time obfuscation target: a random set of grid cells whose total
// area fraction is drawn uniformly from [0.05, 0.25]. Deterministic per seed.
SaliencyMask random_training_mask(int rows, int cols, const MosaicConfig& cfg,
                                  uint64_t seed);

// 1-bit PNG export / import.
void write_mask_png(const SaliencyMask& mask, const std::filesystem::path& p);
SaliencyMask read_mask_png(const std::filesystem::path& p);

}  // namespace clap
