#pragma once

#include "clap/image.hpp"
#include "clap/mat.hpp"

namespace clap {

// Multi-scale gradient magnitude similarity settings. `c` stabilizes the
// similarity ratio; 0.0026 is the customary value for [0,1]-ranged images.
struct GmsConfig {
  int scales = 4;
  double c = 0.0026;
};

void validate(const GmsConfig& cfg);

// Per-pixel reconstruction error field, each value in [0,1].
struct ErrorMap {
  Mat2D values;
  int scales_used = 0;
};

// Prewitt gradient magnitude sqrt(Gx^2 + Gy^2), 1/3-normalized kernels,
// mirrored borders.
Mat2D gradient_magnitude(const Mat2D& image);

// Per-scale gradient magnitude similarity deviation between two images:
// scale s works on both images average-pooled s-1 times; each deviation
// map 1 - (2*ga*gb + c)/(ga^2 + gb^2 + c) is bilinearly upsampled to full
// resolution and the maps are averaged over scales.
ErrorMap msgms_error_map(const GrayImage& a, const GrayImage& b, const GmsConfig& cfg);

struct SmoothingConfig {
  bool enabled = true;
  int kernel = 21;  // odd box size applied before the max
};

// Image-level anomaly score: max over pixels, optionally after box-filter
// smoothing to suppress single-pixel spikes.
double anomaly_score(const ErrorMap& error, const SmoothingConfig& cfg = {});

}  // namespace clap
