#pragma once

#include <cstddef>
#include <vector>

namespace clap {

// Dense row-major H x W grid of doubles. The pixel container shared by
// images, attention maps and error maps.
struct Mat2D {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Mat2D() = default;
  Mat2D(int r, int c, double fill = 0.0)
      : rows(r), cols(c), v(static_cast<size_t>(r) * c, fill) {}

  double& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }
  size_t size() const { return v.size(); }
  bool same_shape(const Mat2D& o) const { return rows == o.rows && cols == o.cols; }
};

bool all_finite(const Mat2D& m);
double min_value(const Mat2D& m);
double max_value(const Mat2D& m);
double mean_value(const Mat2D& m);
// Population standard deviation (divide by N, not N-1).
double stddev_pop(const Mat2D& m);

// General bilinear resample (half-pixel-center convention). Identity when
// the target shape equals the source shape.
Mat2D resize_bilinear(const Mat2D& m, int out_rows, int out_cols);

// 2x downsample by average pooling. Odd trailing rows/cols form partial
// cells averaged over their actual member count.
Mat2D avg_pool2(const Mat2D& m);

// Separable Gaussian blur, mirrored borders. Radius = ceil(3*sigma).
Mat2D gaussian_blur(const Mat2D& m, double sigma);

// k x k box filter with mirrored borders; k must be odd and >= 1.
Mat2D mean_filter(const Mat2D& m, int k);

// Mirror index into [0, n): -1 -> 0, n -> n-1 (symmetric padding).
inline int mirror_index(int i, int n) {
  if (i < 0) i = -i - 1;
  if (i >= n) i = 2 * n - 1 - i;
  return i;
}

// Precomputed bilinear resample from one shape to another, with the exact
// adjoint (needed when a resample sits inside a differentiated loss).
struct BilinearMap {
  int in_rows = 0, in_cols = 0, out_rows = 0, out_cols = 0;
  // Per output row/col: two source indices and the weight of the first.
  std::vector<int> r0, r1, c0, c1;
  std::vector<double> wr, wc;

  BilinearMap(int in_r, int in_c, int out_r, int out_c);
  Mat2D apply(const Mat2D& src) const;
  Mat2D apply_adjoint(const Mat2D& grad_out) const;
};

}  // namespace clap
