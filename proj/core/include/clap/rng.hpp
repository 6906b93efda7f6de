#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace clap {

// Deterministic random source. All stochastic code in the library draws
// through this class instead of the std:: distribution templates, whose
// output is implementation-defined; the sequences here are reproducible
// bit-for-bit for a given seed on any platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with  53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n), rejection sampled (no modulo bias).
  uint64_t below(uint64_t n);

  // Standard normal via Box-Muller; generates pairs, caches the spare.
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// 64-bit FNV-1a. Used for stable text hashes (mock backend kernels,
// config digests).
uint64_t fnv1a(std::string_view text);

// Derive an independent stream seed from a base seed and a role tag, so
// that one user-facing seed can drive every stochastic component without
// correlated streams.
uint64_t derive_seed(uint64_t base, std::string_view tag);

}  // namespace clap
