#include "clap/attention.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "clap/error.hpp"
#include "clap/png_io.hpp"
#include "clap/rng.hpp"
#include "clap/structured.hpp"

namespace clap {

Mat2D MockBackend::raw_saliency(const GrayImage& image, const std::string& text) const {
  if (text == "bright") return image.pixels;
  if (text == "dark") {
    Mat2D inv = image.pixels;
    for (double& x : inv.v) x = 1.0 - x;
    return inv;
  }
  const double sigma = 0.5 + 3.0 * static_cast<double>(fnv1a(text) % 4096) / 4096.0;
  return gaussian_blur(image.pixels, sigma);
}

Mat2D PatchEmbeddingBackend::raw_saliency(const GrayImage& image,
                                          const std::string& text) const {
  const PatchGrid grid = embed_image(image);
  const std::vector<double> t = embed_text(text);
  if (grid.dim != static_cast<int>(t.size()))
    throw BackendError("embedding dimension mismatch between encoders");
  const size_t n = static_cast<size_t>(grid.rows) * grid.cols;

  std::vector<double> mean_emb(grid.dim, 0.0);
  for (size_t p = 0; p < n; ++p)
    for (int d = 0; d < grid.dim; ++d) mean_emb[d] += grid.values[p * grid.dim + d];
  for (double& x : mean_emb) x /= static_cast<double>(n);

  auto cosine = [&](const double* a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int d = 0; d < grid.dim; ++d) {
      dot += a[d] * b[d];
      na += a[d] * a[d];
      nb += b[d] * b[d];
    }
    const double denom = std::sqrt(na) * std::sqrt(nb);
    return denom > 0.0 ? dot / denom : 0.0;
  };

  Mat2D out(grid.rows, grid.cols);
  for (size_t p = 0; p < n; ++p) {
    const double* emb = &grid.values[p * grid.dim];
    double s = cosine(emb, t);
    if (beta_ != 0.0) s -= beta_ * cosine(emb, mean_emb);
    out.v[p] = s;
  }
  return out;
}

std::unique_ptr<LinearVlmBackend> LinearVlmBackend::load(const std::filesystem::path& weights,
                                                         double beta) {
  if (!std::filesystem::is_regular_file(weights))
    throw BackendError("vlm weights file not found: " + weights.string());
  nlohmann::json j;
  try {
    j = load_structured_file(weights);
  } catch (const Error& e) {
    throw BackendError(std::string("cannot load vlm weights: ") + e.what());
  }
  std::unique_ptr<LinearVlmBackend> b(new LinearVlmBackend(beta));
  try {
    b->patch_size_ = j.at("patch_size").get<int>();
    b->dim_ = j.at("dim").get<int>();
    b->input_side_ = j.at("input_side").get<int>();
    b->projection_ = j.at("image_projection").get<std::vector<double>>();
    for (const auto& [word, vec] : j.at("vocab").items())
      b->vocab_[word] = vec.get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError("malformed vlm weights file: " + std::string(e.what()));
  }
  if (b->patch_size_ <= 0 || b->dim_ <= 0 || b->input_side_ <= 0 ||
      b->input_side_ % b->patch_size_ != 0)
    throw BackendError("vlm weights: input_side must be a positive multiple of patch_size");
  const size_t want = static_cast<size_t>(b->dim_) * b->patch_size_ * b->patch_size_;
  if (b->projection_.size() != want)
    throw BackendError("vlm weights: image_projection must hold dim*patch^2 values");
  return b;
}

LinearVlmBackend::PatchGrid LinearVlmBackend::embed_image(const GrayImage& image) const {
  const Mat2D img = resize_bilinear(image.pixels, input_side_, input_side_);
  const int g = input_side_ / patch_size_;
  const int pp = patch_size_ * patch_size_;
  PatchGrid grid;
  grid.rows = g;
  grid.cols = g;
  grid.dim = dim_;
  grid.values.assign(static_cast<size_t>(g) * g * dim_, 0.0);
  std::vector<double> patch(pp);
  for (int gy = 0; gy < g; ++gy)
    for (int gx = 0; gx < g; ++gx) {
      for (int py = 0; py < patch_size_; ++py)
        for (int px = 0; px < patch_size_; ++px)
          patch[py * patch_size_ + px] = img.at(gy * patch_size_ + py, gx * patch_size_ + px);
      double* emb = &grid.values[(static_cast<size_t>(gy) * g + gx) * dim_];
      for (int d = 0; d < dim_; ++d) {
        const double* w = &projection_[static_cast<size_t>(d) * pp];
        double s = 0.0;
        for (int k = 0; k < pp; ++k) s += w[k] * patch[k];
        emb[d] = s;
      }
    }
  return grid;
}

std::vector<double> LinearVlmBackend::embed_text(const std::string& text) const {
  std::vector<std::string> words;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-') {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      words.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(cur);
  if (words.empty()) throw BackendError("vlm: text reduced to zero tokens");

  std::vector<double> emb(dim_, 0.0);
  for (const auto& w : words) {
    auto it = vocab_.find(w);
    if (it != vocab_.end()) {
      if (it->second.size() != static_cast<size_t>(dim_))
        throw BackendError("vlm weights: vocab entry '" + w + "' has wrong dimension");
      for (int d = 0; d < dim_; ++d) emb[d] += it->second[d];
    } else {
      // Out-of-vocabulary: deterministic pseudo-embedding.
      Rng rng(derive_seed(0x564c4dull, w));
      std::vector<double> v(dim_);
      double norm = 0.0;
      for (double& x : v) {
        x = rng.normal();
        norm += x * x;
      }
      norm = std::sqrt(norm);
      for (int d = 0; d < dim_; ++d) emb[d] += v[d] / norm;
    }
  }
  for (double& x : emb) x /= static_cast<double>(words.size());
  return emb;
}

AttentionMap normalize_map(const Mat2D& raw) {
  if (raw.v.empty()) throw ArgumentError("normalize_map: empty map");
  if (!all_finite(raw)) throw NumericError("normalize_map: NaN/Inf in input");
  const double lo = min_value(raw);
  const double hi = max_value(raw);
  AttentionMap out;
  out.values = Mat2D(raw.rows, raw.cols);
  out.normalized = true;
  if (hi > lo) {
    const double span = hi - lo;
    for (size_t i = 0; i < raw.size(); ++i) out.values.v[i] = (raw.v[i] - lo) / span;
  }
  return out;
}

AttentionMap compute_saliency(const AttentionBackend& backend, const GrayImage& image,
                              const std::vector<std::string>& prompts) {
  if (prompts.empty()) throw ArgumentError("compute_saliency: empty prompt list");
  const std::string text = join_prompts(prompts);
  Mat2D raw = backend.raw_saliency(image, text);
  if (raw.v.empty()) throw BackendError("backend returned an empty saliency grid");
  if (raw.rows != image.height() || raw.cols != image.width())
    raw = resize_bilinear(raw, image.height(), image.width());
  return normalize_map(raw);
}

AttentionMap contrastive_combine(const AttentionMap& a_pos, const AttentionMap& a_neg) {
  if (!a_pos.normalized || !a_neg.normalized)
    throw ArgumentError("contrastive_combine: maps must be normalized");
  if (!a_pos.values.same_shape(a_neg.values))
    throw ArgumentError("contrastive_combine: shape mismatch");
  Mat2D diff(a_pos.values.rows, a_pos.values.cols);
  for (size_t i = 0; i < diff.size(); ++i)
    diff.v[i] = std::max(0.0, a_pos.values.v[i] - a_neg.values.v[i]);
  return normalize_map(diff);
}

AttentionMap clap_attention(const AttentionBackend& backend, const GrayImage& image,
                            const PromptSet& prompts) {
  validate_prompt_set(prompts);
  const AttentionMap pos = compute_saliency(backend, image, prompts.positive);
  const AttentionMap neg = compute_saliency(backend, image, prompts.negative);
  return contrastive_combine(pos, neg);
}

AttentionMap plp_attention(const AttentionBackend& backend, const GrayImage& image,
                           const PromptSet& prompts) {
  if (prompts.positive.empty()) throw ArgumentError("plp_attention: empty positive list");
  return compute_saliency(backend, image, prompts.positive);
}

void export_attention_map(const AttentionMap& map, const std::filesystem::path& png_path,
                          const std::filesystem::path& sidecar_path) {
  if (map.values.v.empty()) throw ArgumentError("export_attention_map: empty map");
  const double lo = min_value(map.values);
  const double hi = max_value(map.values);
  Mat2D codes(map.values.rows, map.values.cols);
  if (hi > lo)
    for (size_t i = 0; i < codes.size(); ++i)
      codes.v[i] = (map.values.v[i] - lo) / (hi - lo);
  write_png_gray16(png_path, codes);

  nlohmann::json j;
  j["min"] = lo;
  j["max"] = hi;
  j["shape"] = {map.values.rows, map.values.cols};
  j["normalized"] = map.normalized;
  std::ofstream out(sidecar_path);
  if (!out) throw IoError("cannot write " + sidecar_path.string());
  out << j.dump(2) << "\n";
}

AttentionMap import_attention_map(const std::filesystem::path& png_path,
                                  const std::filesystem::path& sidecar_path) {
  const nlohmann::json j = load_structured_file(sidecar_path);
  const double lo = j.at("min").get<double>();
  const double hi = j.at("max").get<double>();
  const DecodedPng png = read_png(png_path);
  if (png.channels != 1 || png.bit_depth != 16)
    throw IoError("attention map PNG must be 16-bit grayscale: " + png_path.string());
  AttentionMap map;
  map.values = Mat2D(png.rows, png.cols);
  map.normalized = j.value("normalized", false);
  for (size_t i = 0; i < map.values.size(); ++i)
    map.values.v[i] = lo + (hi - lo) * (png.samples[i] / 65535.0);
  return map;
}

}  // namespace clap
