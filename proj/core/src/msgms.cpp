#include "clap/msgms.hpp"

#include <algorithm>
#include <cmath>

#include "clap/error.hpp"

namespace clap {

void validate(const GmsConfig& cfg) {
  if (cfg.scales < 1) throw ArgumentError("GmsConfig: scales must be >= 1");
  if (!(cfg.c > 0.0)) throw ArgumentError("GmsConfig: c must be > 0");
}

// Prewitt pair, 1/3-normalized: hx detects horizontal gradients (left/right
// neighbor difference), hy its transpose.
Mat2D gradient_magnitude(const Mat2D& image) {
  const int rows = image.rows, cols = image.cols;
  Mat2D g(rows, cols);
  constexpr double w = 1.0 / 3.0;
  for (int r = 0; r < rows; ++r) {
    const int rm = mirror_index(r - 1, rows);
    const int rp = mirror_index(r + 1, rows);
    for (int c = 0; c < cols; ++c) {
      const int cm = mirror_index(c - 1, cols);
      const int cp = mirror_index(c + 1, cols);
      const double gx = w * ((image.at(rm, cp) + image.at(r, cp) + image.at(rp, cp)) -
                             (image.at(rm, cm) + image.at(r, cm) + image.at(rp, cm)));
      const double gy = w * ((image.at(rp, cm) + image.at(rp, c) + image.at(rp, cp)) -
                             (image.at(rm, cm) + image.at(rm, c) + image.at(rm, cp)));
      g.at(r, c) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return g;
}

ErrorMap msgms_error_map(const GrayImage& a, const GrayImage& b, const GmsConfig& cfg) {
  validate(cfg);
  if (!a.pixels.same_shape(b.pixels))
    throw ArgumentError("msgms_error_map: shape mismatch");
  const int rows = a.height(), cols = a.width();
  const int min_side = 1 << (cfg.scales - 1);
  if (rows < min_side || cols < min_side)
    throw ArgumentError("msgms_error_map: image smaller than 2^(scales-1) in some dim");

  Mat2D acc(rows, cols, 0.0);
  Mat2D ia = a.pixels, ib = b.pixels;
  for (int s = 0; s < cfg.scales; ++s) {
    if (s > 0) {
      ia = avg_pool2(ia);
      ib = avg_pool2(ib);
    }
    const Mat2D ga = gradient_magnitude(ia);
    const Mat2D gb = gradient_magnitude(ib);
    Mat2D dev(ga.rows, ga.cols);
    for (size_t i = 0; i < dev.size(); ++i) {
      const double x = ga.v[i], y = gb.v[i];
      dev.v[i] = 1.0 - (2.0 * x * y + cfg.c) / (x * x + y * y + cfg.c);
    }
    const Mat2D up = resize_bilinear(dev, rows, cols);
    for (size_t i = 0; i < acc.size(); ++i) acc.v[i] += up.v[i];
  }
  for (double& x : acc.v) x /= cfg.scales;

  ErrorMap out;
  out.values = std::move(acc);
  out.scales_used = cfg.scales;
  return out;
}

double anomaly_score(const ErrorMap& error, const SmoothingConfig& cfg) {
  if (error.values.v.empty()) throw ArgumentError("anomaly_score: empty error map");
  if (!cfg.enabled) return max_value(error.values);
  const int k = std::min({cfg.kernel, error.values.rows, error.values.cols});
  const int odd_k = k % 2 == 0 ? k - 1 : k;
  return max_value(mean_filter(error.values, std::max(1, odd_k)));
}

}  // namespace clap
