#include "clap/image.hpp"

#include <algorithm>
#include <cmath>

#include "clap/error.hpp"
#include "clap/png_io.hpp"

namespace clap {

GrayImage make_gray_image(Mat2D pixels) {
  if (pixels.rows < kMinImageSide || pixels.cols < kMinImageSide)
    throw ArgumentError("image smaller than minimum side " + std::to_string(kMinImageSide));
  for (double x : pixels.v) {
    if (!std::isfinite(x)) throw NumericError("image contains NaN/Inf");
    if (x < 0.0 || x > 1.0) throw ArgumentError("image pixel outside [0,1]");
  }
  return GrayImage{std::move(pixels)};
}

GrayImage load_image(const std::filesystem::path& p, int resize_side) {
  const DecodedPng png = read_png(p);
  const double maxval = png.bit_depth == 16 ? 65535.0 : 255.0;
  Mat2D m(png.rows, png.cols);
  if (png.channels == 1) {
    for (size_t i = 0; i < m.size(); ++i) m.v[i] = png.samples[i] / maxval;
  } else {
    for (size_t i = 0; i < m.size(); ++i) {
      const size_t b = i * 3;
      const double s = static_cast<double>(png.samples[b]) + png.samples[b + 1] +
                       png.samples[b + 2];
      m.v[i] = s / (3.0 * maxval);
    }
  }
  if (resize_side > 0 && (m.rows != resize_side || m.cols != resize_side)) {
    m = resize_bilinear(m, resize_side, resize_side);
    // Bilinear weights are a convex combination, but guard against rounding.
    for (double& x : m.v) x = std::clamp(x, 0.0, 1.0);
  }
  return make_gray_image(std::move(m));
}

void save_image_png8(const GrayImage& img, const std::filesystem::path& p) {
  write_png_gray8(p, img.pixels);
}

}  // namespace clap
