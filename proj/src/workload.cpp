#include "scfu/workload.hpp"

#include <algorithm>

#include "scfu/codec.hpp"
#include <cmath>
#include <numeric>

namespace scfu {

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw RangeError("Rng::below bound must be >= 1");
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

int8_t Rng::nonzero_int7() {
  // 127 candidates: -64..-1 then 1..63.
  const uint64_t u = below(127);
  return static_cast<int8_t>(u < 64 ? static_cast<int64_t>(u) - 64 : static_cast<int64_t>(u) - 63);
}

int8_t Rng::int8_in(int lo, int hi) {
  if (lo > hi || lo < -128 || hi > 127) throw RangeError("bad int8 range");
  return static_cast<int8_t>(lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1))));
}

static void check_fraction(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw RangeError(std::string(name) + " must be in [0, 1]");
}

static int64_t exact_count(double frac, int64_t n) {
  return std::llround(frac * static_cast<double>(n));
}

// Fill with nonzero int7 values, then zero out the selected positions.
static Tensor fill_dense_int7(const std::vector<int>& dims, Rng& rng) {
  Tensor t(dims);
  for (int8_t& w : t.data) w = rng.nonzero_int7();
  return t;
}

Tensor gen_unstructured(const std::vector<int>& dims, const SparsityConfig& cfg) {
  check_fraction(cfg.x_us, "x_us");
  Rng rng(cfg.seed);
  Tensor t = fill_dense_int7(dims, rng);
  if (cfg.mode == SparsityMode::Iid) {
    for (int8_t& w : t.data)
      if (rng.bernoulli(cfg.x_us)) w = 0;
  } else {
    std::vector<int64_t> idx(t.data.size());
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(idx);
    const int64_t zeros = exact_count(cfg.x_us, t.size());
    for (int64_t k = 0; k < zeros; ++k) t.data[idx[k]] = 0;
  }
  return t;
}

Tensor gen_semi_structured(const std::vector<int>& dims, const SparsityConfig& cfg) {
  check_fraction(cfg.x_ss, "x_ss");
  if (dims.empty() || dims.back() % 4 != 0)
    throw ShapeError("channel count must be a multiple of 4");
  Rng rng(cfg.seed);
  Tensor t = fill_dense_int7(dims, rng);
  const int64_t blocks = t.size() / 4;
  if (cfg.mode == SparsityMode::Iid) {
    for (int64_t b = 0; b < blocks; ++b)
      if (rng.bernoulli(cfg.x_ss))
        std::fill_n(t.data.begin() + b * 4, 4, static_cast<int8_t>(0));
  } else {
    std::vector<int64_t> idx(blocks);
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(idx);
    const int64_t zero_blocks = exact_count(cfg.x_ss, blocks);
    for (int64_t k = 0; k < zero_blocks; ++k)
      std::fill_n(t.data.begin() + idx[k] * 4, 4, static_cast<int8_t>(0));
  }
  return t;
}

Tensor gen_combined(const std::vector<int>& dims, const SparsityConfig& cfg) {
  check_fraction(cfg.x_us, "x_us");
  check_fraction(cfg.x_ss, "x_ss");
  Tensor t = gen_semi_structured(dims, cfg);
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);  // second stream for the element mask
  if (cfg.mode == SparsityMode::Iid) {
    const int64_t blocks = t.size() / 4;
    for (int64_t b = 0; b < blocks; ++b) {
      int8_t* blk = t.data.data() + b * 4;
      if (blk[0] == 0 && blk[1] == 0 && blk[2] == 0 && blk[3] == 0) continue;
      for (int k = 0; k < 4; ++k)
        if (rng.bernoulli(cfg.x_us)) blk[k] = 0;
    }
  } else {
    std::vector<int64_t> survivors;
    const int64_t blocks = t.size() / 4;
    for (int64_t b = 0; b < blocks; ++b) {
      const int8_t* blk = t.data.data() + b * 4;
      if (blk[0] || blk[1] || blk[2] || blk[3])
        for (int k = 0; k < 4; ++k) survivors.push_back(b * 4 + k);
    }
    rng.shuffle(survivors);
    const int64_t zeros = exact_count(cfg.x_us, static_cast<int64_t>(survivors.size()));
    for (int64_t k = 0; k < zeros; ++k) t.data[survivors[k]] = 0;
  }
  return t;
}

Tensor gen_dense(const std::vector<int>& dims, uint64_t seed, int lo, int hi) {
  Rng rng(seed);
  Tensor t(dims);
  for (int8_t& w : t.data) w = rng.int8_in(lo, hi);
  return t;
}

Tensor magnitude_prune(const Tensor& weights, double target, PruneGranularity granularity) {
  check_fraction(target, "target");
  weights.check_consistent();
  Tensor out = weights;
  if (granularity == PruneGranularity::Element) {
    std::vector<int64_t> idx(out.data.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int64_t a, int64_t b) {
      return std::abs(static_cast<int>(out.data[a])) < std::abs(static_cast<int>(out.data[b]));
    });
    const int64_t zeros = exact_count(target, out.size());
    for (int64_t k = 0; k < zeros; ++k) out.data[idx[k]] = 0;
  } else {
    if (out.channels() % 4 != 0) throw ShapeError("channel count must be a multiple of 4");
    const int64_t blocks = out.size() / 4;
    std::vector<int64_t> idx(blocks);
    std::iota(idx.begin(), idx.end(), 0);
    auto l1 = [&](int64_t b) {
      int s = 0;
      for (int k = 0; k < 4; ++k) s += std::abs(static_cast<int>(out.data[b * 4 + k]));
      return s;
    };
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int64_t a, int64_t b) { return l1(a) < l1(b); });
    const int64_t zero_blocks = exact_count(target, blocks);
    for (int64_t k = 0; k < zero_blocks; ++k)
      std::fill_n(out.data.begin() + idx[k] * 4, 4, static_cast<int8_t>(0));
  }
  return out;
}

}  // namespace scfu
