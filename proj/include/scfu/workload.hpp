// Seeded workload generation: IID / exact-ratio unstructured masks, 4:4
// block masks, combined patterns, and magnitude pruning.
//
// All randomness flows through Rng (mt19937_64 with rejection sampling for
// bounded draws), so a given seed reproduces a tensor bit for bit.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "scfu/tensor.hpp"

namespace scfu {

inline constexpr const char* kRngAlgorithm = "mt19937_64-rej";

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound), bound >= 1. Rejection keeps the mapping
  // stdlib-independent.
  uint64_t below(uint64_t bound);

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  // Uniform nonzero int7: [-64, -1] or [1, 63].
  int8_t nonzero_int7();

  // Uniform int8 in [lo, hi].
  int8_t int8_in(int lo, int hi);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

enum class SparsityMode { Iid, ExactRatio };

struct SparsityConfig {
  double x_us = 0.0;  // unstructured zero fraction (inside surviving blocks when combined)
  double x_ss = 0.0;  // fraction of all-zero 4-blocks
  uint64_t seed = 0;
  SparsityMode mode = SparsityMode::ExactRatio;
};

Tensor gen_unstructured(const std::vector<int>& dims, const SparsityConfig& cfg);
Tensor gen_semi_structured(const std::vector<int>& dims, const SparsityConfig& cfg);
Tensor gen_combined(const std::vector<int>& dims, const SparsityConfig& cfg);

// Dense random tensor with values in [lo, hi]; used for activations.
Tensor gen_dense(const std::vector<int>& dims, uint64_t seed, int lo = -128, int hi = 127);

enum class PruneGranularity { Element, Block4 };

// Zero the round(target * N) smallest elements by |w| (or 4-blocks by L1
// norm). Ties break toward the lowest linear index.
Tensor magnitude_prune(const Tensor& weights, double target, PruneGranularity granularity);

}  // namespace scfu
