#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "clap/image.hpp"
#include "clap/mat.hpp"
#include "clap/prompts.hpp"

namespace clap {

// Prompt-conditioned relevance map on the image grid. When `normalized` is
// set, values lie in [0,1] and, unless the raw map was constant, attain
// both 0 and 1.
struct AttentionMap {
  Mat2D values;
  bool normalized = false;
};

// A vision-language saliency source. Implementations must be deterministic
// for fixed inputs and safe for concurrent raw_saliency calls.
class AttentionBackend {
 public:
  virtual ~AttentionBackend() = default;
  virtual std::string name() const = 0;
  // Raw (unnormalized) saliency grid for one image/text pair. The grid may
  // be lower resolution than the image; the caller upsamples.
  virtual Mat2D raw_saliency(const GrayImage& image, const std::string& text) const = 0;
};

// Hermetic test backend. Contract:
//   text "bright" -> raw map = pixel intensity
//   text "dark"   -> raw map = 1 - intensity
//   anything else -> intensity blurred with a Gaussian whose sigma is
//                    derived from a stable hash of the text
class MockBackend final : public AttentionBackend {
 public:
  std::string name() const override { return "mock"; }
  Mat2D raw_saliency(const GrayImage& image, const std::string& text) const override;
};

// Patch-embedding backends: an image encoder produces a grid of patch
// embeddings, a text encoder produces one text embedding, and saliency is
// the per-patch cosine similarity, optionally attenuated by beta times the
// patch's similarity to the mean image embedding.
class PatchEmbeddingBackend : public AttentionBackend {
 public:
  struct PatchGrid {
    int rows = 0, cols = 0, dim = 0;
    std::vector<double> values;  // rows*cols*dim, patch-major
  };

  explicit PatchEmbeddingBackend(double beta) : beta_(beta) {}
  Mat2D raw_saliency(const GrayImage& image, const std::string& text) const final;

 protected:
  virtual PatchGrid embed_image(const GrayImage& image) const = 0;
  virtual std::vector<double> embed_text(const std::string& text) const = 0;

 private:
  double beta_ = 0.0;
};

// Concrete pluggable VLM: patch embeddings from a linear projection of raw
// patches and text embeddings from a word-vector table, both loaded from a
// JSON weights file:
//   {"patch_size": P, "dim": D, "input_side": N,
//    "image_projection": [D*P*P doubles], "vocab": {"word": [D doubles]}}
// Words missing from the vocab get a deterministic hash-seeded unit vector.
class LinearVlmBackend final : public PatchEmbeddingBackend {
 public:
  static std::unique_ptr<LinearVlmBackend> load(const std::filesystem::path& weights,
                                                double beta);
  std::string name() const override { return "vlm"; }

 protected:
  PatchGrid embed_image(const GrayImage& image) const override;
  std::vector<double> embed_text(const std::string& text) const override;

 private:
  LinearVlmBackend(double beta) : PatchEmbeddingBackend(beta) {}
  int patch_size_ = 0;
  int input_side_ = 0;
  int dim_ = 0;
  std::vector<double> projection_;                        // dim x patch^2
  std::map<std::string, std::vector<double>> vocab_;
};

// Affine min-max rescale to [0,1]; a constant input maps to all zeros.
// NaN/Inf raise NumericError.
AttentionMap normalize_map(const Mat2D& raw);

// Join prompts with ", ", query the backend, upsample the raw grid to the
// image resolution and min-max normalize.
AttentionMap compute_saliency(const AttentionBackend& backend, const GrayImage& image,
                              const std::vector<std::string>& prompts);

// a_pos - a_neg, clamped below at zero, then renormalized.
AttentionMap contrastive_combine(const AttentionMap& a_pos, const AttentionMap& a_neg);

// Contrastive language prompting: positive saliency minus negative saliency.
AttentionMap clap_attention(const AttentionBackend& backend, const GrayImage& image,
                            const PromptSet& prompts);

// Positive-language-prompting baseline: positive saliency only.
AttentionMap plp_attention(const AttentionBackend& backend, const GrayImage& image,
                           const PromptSet& prompts);

// 16-bit grayscale PNG plus a JSON sidecar {min, max, shape} so the stored
// codes can be mapped back to map values.
void export_attention_map(const AttentionMap& map, const std::filesystem::path& png_path,
                          const std::filesystem::path& sidecar_path);
AttentionMap import_attention_map(const std::filesystem::path& png_path,
                                  const std::filesystem::path& sidecar_path);

}  // namespace clap
