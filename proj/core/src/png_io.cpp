#include "clap/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>

#include "clap/error.hpp"

namespace clap {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& p, const char* mode) {
  FilePtr f(std::fopen(p.string().c_str(), mode));
  if (!f) throw IoError("cannot open " + p.string());
  return f;
}

void quiet_warning(png_structp, png_const_charp) {}

struct PngHeader {
  png_uint_32 rows = 0, cols = 0;
  int channels = 0, bit_depth = 0;
};

// libpng reports errors via longjmp, so every call into it lives in one of
// the helpers below, which keep only trivially-destructible locals. The
// C++ callers own all buffers and translate `false` into exceptions.

bool read_header(png_structp png, png_infop info, std::FILE* f, PngHeader* h) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_init_io(png, f);
  png_read_info(png, info);
  png_uint_32 w = 0, hh = 0;
  int depth = 0, color = 0;
  png_get_IHDR(png, info, &w, &hh, &depth, &color, nullptr, nullptr, nullptr);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_strip_alpha(png);
#if defined(PNG_READ_SWAP_SUPPORTED)
  if (depth == 16) png_set_swap(png);
#endif
  png_read_update_info(png, info);
  h->rows = hh;
  h->cols = w;
  h->channels = png_get_channels(png, info);
  h->bit_depth = png_get_bit_depth(png, info);
  return true;
}

bool read_rows(png_structp png, png_bytep* rows) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_read_image(png, rows);
  png_read_end(png, nullptr);
  return true;
}

bool write_all(png_structp png, png_infop info, std::FILE* f, int rows, int cols,
               int bit_depth, int color_type, png_bytep* row_ptrs) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_init_io(png, f);
  png_set_IHDR(png, info, cols, rows, bit_depth, color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (bit_depth < 8) png_set_packing(png);
#if defined(PNG_WRITE_SWAP_SUPPORTED)
  if (bit_depth == 16) png_set_swap(png);
#endif
  png_write_image(png, row_ptrs);
  png_write_end(png, info);
  return true;
}

struct ReadStructs {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ReadStructs() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, quiet_warning);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) {
      if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
      throw IoError("libpng read struct allocation failed");
    }
  }
  ~ReadStructs() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct WriteStructs {
  png_structp png = nullptr;
  png_infop info = nullptr;
  WriteStructs() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, quiet_warning);
    if (png) info = png_create_info_struct(png);
    if (!png || !info) {
      if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
      throw IoError("libpng write struct allocation failed");
    }
  }
  ~WriteStructs() { png_destroy_write_struct(&png, &info); }
};

void write_png_bytes(const std::filesystem::path& p, int rows, int cols, int bit_depth,
                     int color_type, std::vector<uint8_t>& bytes, size_t row_stride) {
  if (rows <= 0 || cols <= 0) throw ArgumentError("write_png: empty image");
  FilePtr f = open_file(p, "wb");
  WriteStructs w;
  std::vector<png_bytep> row_ptrs(rows);
  for (int r = 0; r < rows; ++r) row_ptrs[r] = bytes.data() + r * row_stride;
  if (!write_all(w.png, w.info, f.get(), rows, cols, bit_depth, color_type, row_ptrs.data()))
    throw IoError("failed writing " + p.string());
}

uint32_t quantize(double v, uint32_t maxval) {
  const double c = std::clamp(v, 0.0, 1.0);
  return static_cast<uint32_t>(std::lround(c * maxval));
}

}  // namespace

bool is_png_file(const std::filesystem::path& p) {
  std::FILE* f = std::fopen(p.string().c_str(), "rb");
  if (!f) return false;
  unsigned char sig[8];
  const size_t n = std::fread(sig, 1, 8, f);
  std::fclose(f);
  return n == 8 && png_sig_cmp(sig, 0, 8) == 0;
}

DecodedPng read_png(const std::filesystem::path& p) {
  FilePtr f = open_file(p, "rb");
  ReadStructs rs;
  PngHeader h;
  if (!read_header(rs.png, rs.info, f.get(), &h))
    throw IoError("failed decoding " + p.string());
  if (h.channels != 1 && h.channels != 3)
    throw IoError("unsupported channel count in " + p.string());
  if (h.bit_depth != 8 && h.bit_depth != 16)
    throw IoError("unsupported bit depth in " + p.string());

  DecodedPng out;
  out.rows = static_cast<int>(h.rows);
  out.cols = static_cast<int>(h.cols);
  out.channels = h.channels;
  out.bit_depth = h.bit_depth;
  out.samples.resize(static_cast<size_t>(out.rows) * out.cols * out.channels);

  const size_t px_per_row = static_cast<size_t>(out.cols) * out.channels;
  std::vector<png_bytep> row_ptrs(out.rows);
  std::vector<uint8_t> raw;
  if (h.bit_depth == 8) {
    raw.resize(out.samples.size());
    for (int r = 0; r < out.rows; ++r) row_ptrs[r] = raw.data() + r * px_per_row;
  } else {
    for (int r = 0; r < out.rows; ++r)
      row_ptrs[r] = reinterpret_cast<png_bytep>(out.samples.data() + r * px_per_row);
  }
  if (!read_rows(rs.png, row_ptrs.data()))
    throw IoError("failed decoding " + p.string());
  if (h.bit_depth == 8)
    for (size_t i = 0; i < raw.size(); ++i) out.samples[i] = raw[i];
  return out;
}

void write_png_gray8(const std::filesystem::path& p, const Mat2D& values) {
  std::vector<uint8_t> bytes(values.size());
  for (size_t i = 0; i < values.size(); ++i)
    bytes[i] = static_cast<uint8_t>(quantize(values.v[i], 255));
  write_png_bytes(p, values.rows, values.cols, 8, PNG_COLOR_TYPE_GRAY, bytes, values.cols);
}

void write_png_gray16(const std::filesystem::path& p, const Mat2D& values) {
  std::vector<uint8_t> bytes(values.size() * 2);
  auto* out16 = reinterpret_cast<uint16_t*>(bytes.data());
  for (size_t i = 0; i < values.size(); ++i)
    out16[i] = static_cast<uint16_t>(quantize(values.v[i], 65535));
  write_png_bytes(p, values.rows, values.cols, 16, PNG_COLOR_TYPE_GRAY, bytes,
                  static_cast<size_t>(values.cols) * 2);
}

void write_png_bilevel(const std::filesystem::path& p, int rows, int cols,
                       const std::vector<uint8_t>& bits) {
  if (bits.size() != static_cast<size_t>(rows) * cols)
    throw ArgumentError("write_png_bilevel: bit buffer size mismatch");
  std::vector<uint8_t> bytes(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) bytes[i] = bits[i] ? 1 : 0;
  write_png_bytes(p, rows, cols, 1, PNG_COLOR_TYPE_GRAY, bytes, cols);
}

void write_png_rgb8(const std::filesystem::path& p, int rows, int cols,
                    const std::vector<uint8_t>& rgb) {
  if (rgb.size() != static_cast<size_t>(rows) * cols * 3)
    throw ArgumentError("write_png_rgb8: buffer size mismatch");
  std::vector<uint8_t> bytes = rgb;
  write_png_bytes(p, rows, cols, 8, PNG_COLOR_TYPE_RGB, bytes, static_cast<size_t>(cols) * 3);
}

}  // namespace clap
