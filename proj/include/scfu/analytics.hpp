// Closed-form cycle/speedup models and the sweep harness.
//
// For IID sparsity x, the variable-cycle MAC averages
//   c_a(x) = sum_{k=0..4} C(4,k) x^k (1-x)^(4-k) (4-k)   (ideal, = 4(1-x))
//   c_o(x) = c_a(x) + x^4                                 (all-zero block costs 1)
// with speedups s = 4 / c against the 4-cycle sequential baseline. Block
// skipping over a nonzero-block fraction 1 - x_ss gives s_a = 1 / (1 - x_ss).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scfu/exec.hpp"
#include "scfu/workload.hpp"

namespace scfu {

struct SpeedupPoint {
  double x = 0.0;
  double c_a = 0.0;
  double c_o = 0.0;
  double s_a = 0.0;  // 4 / c_a (infinite at x = 1)
  double s_o = 0.0;  // 4 / c_o
};

// Literal binomial sums; equal to 4(1-x) and 4(1-x) + x^4.
double ussa_c_analytical(double x);
double ussa_c_observed(double x);
SpeedupPoint ussa_point(double x);

// 1 / (1 - x_ss); infinity at x_ss = 1.
double sssa_speedup_analytical(double x_ss);

// Mean ussa_vcmac cycles per block over n_blocks IID blocks; converges to
// c_o(x).
double monte_carlo_ussa(double x, int64_t n_blocks, uint64_t seed);

struct SweepCell {
  Accel accel = Accel::Ussa;
  double x_ss = 0.0;
  double x_us = 0.0;
};

struct SweepOptions {
  std::vector<int> dims = {3, 3, 64};  // weight tensor dims
  std::vector<int> input_dims;         // default: matches a 1x1 output
  uint64_t seed = 0;
  SparsityMode mode = SparsityMode::ExactRatio;
  int skip_cap = kSkipCapMax;
  CostProfile profile{};
  int jobs = 1;
};

// One CSV row per cell, in grid order regardless of completion order.
// Columns: the RunReport row plus c_a,c_o,s_a (empty where not applicable).
std::vector<std::string> sweep(const std::vector<SweepCell>& grid, const SweepOptions& opt);

std::string sweep_csv_header();

}  // namespace scfu
