#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "clap/mat.hpp"

namespace clap {

// Raw decoded PNG: interleaved samples, bit depth 8 or 16, 1 or 3 channels
// (palette is expanded, alpha stripped).
struct DecodedPng {
  int rows = 0;
  int cols = 0;
  int channels = 1;
  int bit_depth = 8;
  std::vector<uint16_t> samples;
};

// True when the file exists and starts with the 8-byte PNG signature.
bool is_png_file(const std::filesystem::path& p);

DecodedPng read_png(const std::filesystem::path& p);

// values are clamped to [0,1] and quantized to the stated depth.
void write_png_gray8(const std::filesystem::path& p, const Mat2D& values);
void write_png_gray16(const std::filesystem::path& p, const Mat2D& values);

// 1-bit bilevel image; nonzero bytes are written as white.
void write_png_bilevel(const std::filesystem::path& p, int rows, int cols,
                       const std::vector<uint8_t>& bits);

// Interleaved RGB bytes, row-major, 3 bytes per pixel.
void write_png_rgb8(const std::filesystem::path& p, int rows, int cols,
                    const std::vector<uint8_t>& rgb);

}  // namespace clap
