#include "clap/mat.hpp"

#include <algorithm>
#include <cmath>

#include "clap/error.hpp"

namespace clap {

bool all_finite(const Mat2D& m) {
  for (double x : m.v)
    if (!std::isfinite(x)) return false;
  return true;
}

double min_value(const Mat2D& m) {
  if (m.v.empty()) throw ArgumentError("min_value: empty matrix");
  return *std::min_element(m.v.begin(), m.v.end());
}

double max_value(const Mat2D& m) {
  if (m.v.empty()) throw ArgumentError("max_value: empty matrix");
  return *std::max_element(m.v.begin(), m.v.end());
}

double mean_value(const Mat2D& m) {
  if (m.v.empty()) throw ArgumentError("mean_value: empty matrix");
  double s = 0.0;
  for (double x : m.v) s += x;
  return s / static_cast<double>(m.v.size());
}

double stddev_pop(const Mat2D& m) {
  const double mu = mean_value(m);
  double s = 0.0;
  for (double x : m.v) {
    const double d = x - mu;
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(m.v.size()));
}

BilinearMap::BilinearMap(int in_r, int in_c, int out_r, int out_c)
    : in_rows(in_r), in_cols(in_c), out_rows(out_r), out_cols(out_c) {
  if (in_r <= 0 || in_c <= 0 || out_r <= 0 || out_c <= 0)
    throw ArgumentError("BilinearMap: non-positive shape");
  r0.resize(out_r);
  r1.resize(out_r);
  wr.resize(out_r);
  c0.resize(out_c);
  c1.resize(out_c);
  wc.resize(out_c);
  const double sr = static_cast<double>(in_r) / out_r;
  const double sc = static_cast<double>(in_c) / out_c;
  for (int i = 0; i < out_r; ++i) {
    double y = (i + 0.5) * sr - 0.5;
    y = std::clamp(y, 0.0, static_cast<double>(in_r - 1));
    const int lo = static_cast<int>(std::floor(y));
    r0[i] = lo;
    r1[i] = std::min(lo + 1, in_r - 1);
    wr[i] = 1.0 - (y - lo);
  }
  for (int j = 0; j < out_c; ++j) {
    double x = (j + 0.5) * sc - 0.5;
    x = std::clamp(x, 0.0, static_cast<double>(in_c - 1));
    const int lo = static_cast<int>(std::floor(x));
    c0[j] = lo;
    c1[j] = std::min(lo + 1, in_c - 1);
    wc[j] = 1.0 - (x - lo);
  }
}

Mat2D BilinearMap::apply(const Mat2D& src) const {
  if (src.rows != in_rows || src.cols != in_cols)
    throw ArgumentError("BilinearMap::apply: shape mismatch");
  Mat2D out(out_rows, out_cols);
  for (int i = 0; i < out_rows; ++i) {
    const double* top = &src.v[static_cast<size_t>(r0[i]) * in_cols];
    const double* bot = &src.v[static_cast<size_t>(r1[i]) * in_cols];
    const double a = wr[i];
    double* dst = &out.v[static_cast<size_t>(i) * out_cols];
    for (int j = 0; j < out_cols; ++j) {
      const double b = wc[j];
      const double t = a * (b * top[c0[j]] + (1.0 - b) * top[c1[j]]);
      const double u = (1.0 - a) * (b * bot[c0[j]] + (1.0 - b) * bot[c1[j]]);
      dst[j] = t + u;
    }
  }
  return out;
}

Mat2D BilinearMap::apply_adjoint(const Mat2D& grad_out) const {
  if (grad_out.rows != out_rows || grad_out.cols != out_cols)
    throw ArgumentError("BilinearMap::apply_adjoint: shape mismatch");
  Mat2D grad_in(in_rows, in_cols);
  for (int i = 0; i < out_rows; ++i) {
    const double a = wr[i];
    double* top = &grad_in.v[static_cast<size_t>(r0[i]) * in_cols];
    double* bot = &grad_in.v[static_cast<size_t>(r1[i]) * in_cols];
    const double* g = &grad_out.v[static_cast<size_t>(i) * out_cols];
    for (int j = 0; j < out_cols; ++j) {
      const double b = wc[j];
      top[c0[j]] += a * b * g[j];
      top[c1[j]] += a * (1.0 - b) * g[j];
      bot[c0[j]] += (1.0 - a) * b * g[j];
      bot[c1[j]] += (1.0 - a) * (1.0 - b) * g[j];
    }
  }
  return grad_in;
}

Mat2D resize_bilinear(const Mat2D& m, int out_rows, int out_cols) {
  if (m.rows == out_rows && m.cols == out_cols) return m;
  return BilinearMap(m.rows, m.cols, out_rows, out_cols).apply(m);
}

Mat2D avg_pool2(const Mat2D& m) {
  const int or_ = (m.rows + 1) / 2;
  const int oc = (m.cols + 1) / 2;
  Mat2D out(or_, oc);
  for (int i = 0; i < or_; ++i) {
    const int r_end = std::min(2 * i + 2, m.rows);
    for (int j = 0; j < oc; ++j) {
      const int c_end = std::min(2 * j + 2, m.cols);
      double s = 0.0;
      int n = 0;
      for (int r = 2 * i; r < r_end; ++r)
        for (int c = 2 * j; c < c_end; ++c, ++n) s += m.at(r, c);
      out.at(i, j) = s / n;
    }
  }
  return out;
}

namespace {
std::vector<double> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& x : k) x /= sum;
  return k;
}

Mat2D convolve_rows(const Mat2D& m, const std::vector<double>& k) {
  const int radius = (static_cast<int>(k.size()) - 1) / 2;
  Mat2D out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d)
        s += k[d + radius] * m.at(i, mirror_index(j + d, m.cols));
      out.at(i, j) = s;
    }
  return out;
}

Mat2D convolve_cols(const Mat2D& m, const std::vector<double>& k) {
  const int radius = (static_cast<int>(k.size()) - 1) / 2;
  Mat2D out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d)
        s += k[d + radius] * m.at(mirror_index(i + d, m.rows), j);
      out.at(i, j) = s;
    }
  return out;
}
}  // namespace

Mat2D gaussian_blur(const Mat2D& m, double sigma) {
  if (sigma <= 0.0) return m;
  const auto k = gaussian_kernel(sigma);
  return convolve_cols(convolve_rows(m, k), k);
}

Mat2D mean_filter(const Mat2D& m, int k) {
  if (k < 1 || k % 2 == 0) throw ArgumentError("mean_filter: kernel must be odd and >= 1");
  if (k == 1) return m;
  std::vector<double> box(static_cast<size_t>(k), 1.0 / k);
  return convolve_cols(convolve_rows(m, box), box);
}

}  // namespace clap
