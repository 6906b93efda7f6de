#pragma once

#include <filesystem>

#include "clap/mat.hpp"

namespace clap {

// Single-channel image with every pixel in [0,1]. Multi-channel sources are
// averaged to luminance at load time; 8-bit samples map to [0,1] by /255.
struct GrayImage {
  Mat2D pixels;

  int height() const { return pixels.rows; }
  int width() const { return pixels.cols; }
};

inline constexpr int kMinImageSide = 8;

// Validates the GrayImage invariants (range, minimum size) and wraps the
// matrix. Throws ArgumentError / NumericError.
GrayImage make_gray_image(Mat2D pixels);

// Decode a PNG into a GrayImage. resize_side > 0 resizes to a square of
// that side with bilinear interpolation; 0 keeps the stored resolution.
GrayImage load_image(const std::filesystem::path& p, int resize_side = 0);

void save_image_png8(const GrayImage& img, const std::filesystem::path& p);

}  // namespace clap
