#include "clap/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <tuple>

#include "clap/error.hpp"
#include "clap/png_io.hpp"
#include "clap/rng.hpp"

namespace fs = std::filesystem;

namespace clap {

const char* to_string(Label l) { return l == Label::normal ? "normal" : "abnormal"; }

const char* to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    default: return "test";
  }
}

size_t SplitManifest::count(Split s, Label l) const {
  size_t n = 0;
  for (const auto& r : records)
    if (r.split == s && r.label == l) ++n;
  return n;
}

std::vector<SampleRecord> SplitManifest::subset(Split s) const {
  std::vector<SampleRecord> out;
  for (const auto& r : records)
    if (r.split == s) out.push_back(r);
  return out;
}

std::vector<SampleRecord> SplitManifest::subset(Split s, Label l) const {
  std::vector<SampleRecord> out;
  for (const auto& r : records)
    if (r.split == s && r.label == l) out.push_back(r);
  return out;
}

namespace {

bool has_png_name(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png";
}

void scan_dir(const fs::path& dir, Split split, Label label, SplitManifest& m) {
  if (!fs::is_directory(dir)) return;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && has_png_name(e.path())) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    if (!is_png_file(f)) {
      ++m.skipped_unreadable;
      continue;
    }
    m.records.push_back({f.string(), label, split, m.dataset_name});
  }
}

int split_rank(Split s) { return s == Split::train ? 0 : (s == Split::validation ? 1 : 2); }

void sort_records(std::vector<SampleRecord>& records) {
  std::sort(records.begin(), records.end(), [](const SampleRecord& a, const SampleRecord& b) {
    return std::make_tuple(split_rank(a.split), static_cast<int>(a.label), a.image_path) <
           std::make_tuple(split_rank(b.split), static_cast<int>(b.label), b.image_path);
  });
}

}  // namespace

SplitManifest scan_manifest(const fs::path& root) {
  if (!fs::is_directory(root)) throw DataError("dataset root not found: " + root.string());
  if (!fs::is_directory(root / "train" / "good"))
    throw DataError("layout error: missing train/good under " + root.string());
  if (!fs::is_directory(root / "test" / "good") && !fs::is_directory(root / "test" / "ungood"))
    throw DataError("layout error: need test/good or test/ungood under " + root.string());
  if (fs::is_directory(root / "train" / "ungood") &&
      !fs::is_empty(root / "train" / "ungood"))
    throw DataError("layout error: abnormal samples present in train split");

  SplitManifest m;
  m.dataset_name = root.filename().string();
  if (m.dataset_name.empty()) m.dataset_name = root.parent_path().filename().string();
  m.root = root.string();
  scan_dir(root / "train" / "good", Split::train, Label::normal, m);
  scan_dir(root / "validation" / "good", Split::validation, Label::normal, m);
  scan_dir(root / "validation" / "ungood", Split::validation, Label::abnormal, m);
  scan_dir(root / "test" / "good", Split::test, Label::normal, m);
  scan_dir(root / "test" / "ungood", Split::test, Label::abnormal, m);
  sort_records(m.records);
  return m;
}

std::vector<SampleRecord> epoch_subsample(const SplitManifest& manifest, int n, uint64_t seed) {
  if (n < 1) throw ArgumentError("epoch_subsample: n must be >= 1");
  std::vector<SampleRecord> train = manifest.subset(Split::train);
  if (train.empty()) throw DataError("epoch_subsample: empty train split");
  Rng rng(seed);
  // Partial Fisher-Yates: the first k slots become the sample.
  const size_t k = std::min<size_t>(static_cast<size_t>(n), train.size());
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(rng.below(train.size() - i));
    std::swap(train[i], train[j]);
  }
  train.resize(k);
  return train;
}

namespace {

// Smooth low-frequency texture: bilinear upsample of a coarse random grid,
// scaled into [0.15, 0.45].
Mat2D synth_texture(int side, Rng& rng) {
  const int coarse = std::max(2, side / 16);
  Mat2D grid(coarse, coarse);
  for (double& x : grid.v) x = rng.uniform01();
  Mat2D tex = resize_bilinear(grid, side, side);
  for (double& x : tex.v) x = 0.15 + 0.3 * x;
  return tex;
}

struct Blob {
  double cy, cx, a, b, theta, delta;
};

Blob synth_blob(int side, Rng& rng) {
  Blob bl;
  bl.cy = rng.uniform(0.3, 0.7) * side;
  bl.cx = rng.uniform(0.3, 0.7) * side;
  bl.a = rng.uniform(0.05, 0.125) * side;
  bl.b = rng.uniform(0.05, 0.125) * side;
  bl.theta = rng.uniform(0.0, 3.14159265358979323846);
  bl.delta = rng.uniform(0.45, 0.6);
  return bl;
}

bool inside_blob(const Blob& bl, double y, double x) {
  const double dy = y - bl.cy;
  const double dx = x - bl.cx;
  const double c = std::cos(bl.theta), s = std::sin(bl.theta);
  const double u = (c * dx + s * dy) / bl.a;
  const double v = (-s * dx + c * dy) / bl.b;
  return u * u + v * v <= 1.0;
}

}  // namespace

SplitManifest generate_synthetic(const SynthConfig& cfg) {
  if (cfg.side < 32) throw ArgumentError("generate_synthetic: side must be >= 32");
  if (cfg.n_normal < 1) throw ArgumentError("generate_synthetic: need at least one normal");
  if (cfg.test_normal_fraction < 0.0 || cfg.test_normal_fraction > 1.0)
    throw ArgumentError("generate_synthetic: test_normal_fraction outside [0,1]");

  const fs::path root = cfg.out_dir;
  std::error_code ec;
  fs::create_directories(root / "train" / "good", ec);
  fs::create_directories(root / "test" / "good", ec);
  if (cfg.n_abnormal > 0) {
    fs::create_directories(root / "test" / "ungood", ec);
    fs::create_directories(root / "ground_truth" / "test" / "ungood", ec);
  }
  if (ec) throw IoError("cannot create output layout under " + root.string());
  if (!fs::is_directory(root / "train" / "good"))
    throw IoError("output dir not writable: " + root.string());

  const int n_test_normal =
      static_cast<int>(std::llround(cfg.n_normal * cfg.test_normal_fraction));

  char name[32];
  for (int i = 0; i < cfg.n_normal; ++i) {
    Rng rng(derive_seed(cfg.seed, "synth:normal:" + std::to_string(i)));
    Mat2D tex = synth_texture(cfg.side, rng);
    std::snprintf(name, sizeof(name), "%05d.png", i);
    const bool to_test = i < n_test_normal;
    const fs::path dir = to_test ? root / "test" / "good" : root / "train" / "good";
    write_png_gray8(dir / name, tex);
  }
  for (int i = 0; i < cfg.n_abnormal; ++i) {
    Rng rng(derive_seed(cfg.seed, "synth:abnormal:" + std::to_string(i)));
    Mat2D tex = synth_texture(cfg.side, rng);
    const Blob bl = synth_blob(cfg.side, rng);
    std::vector<uint8_t> mask(tex.size(), 0);
    for (int y = 0; y < cfg.side; ++y)
      for (int x = 0; x < cfg.side; ++x)
        if (inside_blob(bl, y + 0.5, x + 0.5)) {
          tex.at(y, x) = std::min(1.0, tex.at(y, x) + bl.delta);
          mask[static_cast<size_t>(y) * cfg.side + x] = 1;
        }
    std::snprintf(name, sizeof(name), "%05d.png", i);
    write_png_gray8(root / "test" / "ungood" / name, tex);
    write_png_bilevel(root / "ground_truth" / "test" / "ungood" / name, cfg.side, cfg.side,
                      mask);
  }
  return scan_manifest(root);
}

void write_manifest_json(const SplitManifest& manifest, const fs::path& p) {
  nlohmann::json j;
  j["dataset_name"] = manifest.dataset_name;
  j["root"] = manifest.root;
  j["skipped_unreadable"] = manifest.skipped_unreadable;
  auto& records = j["records"] = nlohmann::json::array();
  for (const auto& r : manifest.records)
    records.push_back({{"path", r.image_path},
                       {"label", to_string(r.label)},
                       {"split", to_string(r.split)}});
  std::ofstream out(p);
  if (!out) throw IoError("cannot write manifest to " + p.string());
  out << j.dump(2) << "\n";
}

}  // namespace clap
