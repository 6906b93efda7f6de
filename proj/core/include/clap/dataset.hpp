#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "clap/image.hpp"

namespace clap {

enum class Label { normal, abnormal };
enum class Split { train, validation, test };

const char* to_string(Label l);
const char* to_string(Split s);

struct SampleRecord {
  std::string image_path;  // absolute or root-relative path to the PNG
  Label label = Label::normal;
  Split split = Split::train;
  std::string dataset_name;
};

struct SplitManifest {
  std::string dataset_name;
  std::string root;
  std::vector<SampleRecord> records;
  int skipped_unreadable = 0;  // PNG-named files that failed the signature check

  size_t count(Split s, Label l) const;
  std::vector<SampleRecord> subset(Split s) const;
  std::vector<SampleRecord> subset(Split s, Label l) const;
};

// Scan a directory tree laid out as
//   <root>/train/good/*.png
//   <root>/test/good/*.png            <root>/test/ungood/*.png
//   <root>/validation/good|ungood     (optional)
// `good` maps to normal, `ungood` to abnormal. Records come back sorted by
// (split, label, path). Missing train/good is a fatal layout error; files
// with a .png name but a broken signature are skipped and counted.
SplitManifest scan_manifest(const std::filesystem::path& root);

// Draw min(n, train size) train records uniformly without replacement.
// Identical (manifest, n, seed) triples give identical sequences.
std::vector<SampleRecord> epoch_subsample(const SplitManifest& manifest, int n,
                                          uint64_t seed);

struct SynthConfig {
  int n_normal = 20;
  int n_abnormal = 10;
  int side = 64;
  uint64_t seed = 0;
  std::filesystem::path out_dir;
  // Fraction of normal images routed to test/good (default: half).
  double test_normal_fraction = 0.5;
};

// Generate a desk-scale dataset in the layout above: smooth low-frequency
// normal textures, plus abnormal copies carrying one bright elliptical blob
// (intensity +0.45..0.6, semi-axes 5..12.5% of side). Ground-truth blob
// masks go under <out>/ground_truth/test/ungood/. Deterministic per seed.
SplitManifest generate_synthetic(const SynthConfig& cfg);

void write_manifest_json(const SplitManifest& manifest, const std::filesystem::path& p);

}  // namespace clap
