// Convolution kernel executors.
//
// Each variant runs the full conv loop nest over a layer, driving one of the
// instruction models per 4-weight block, and reports exact outputs together
// with the accumulated cycle count. SSSA and CSA walk each channel row with
// the while-loop / inc_indvar pattern, so all-zero blocks flagged by the
// lookahead codes are never visited.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scfu/cfu.hpp"
#include "scfu/tensor.hpp"

namespace scfu {

struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Accel { BaselineSimd, BaselineSeq, Sssa, Ussa, Csa };

const char* accel_name(Accel a);
Accel accel_from_name(const std::string& name);

struct CostProfile {
  // Loop overhead charged per block actually executed by the kernel.
  uint32_t per_block_loop_overhead = 0;
  // Overhead charged per block of the comparison baseline.
  uint32_t baseline_loop_overhead = 0;
  // Cost of the inc_indvar instruction in SSSA/CSA loops; 0 models the
  // write-back overlapping with the MAC.
  uint32_t inc_indvar_cost = 0;
};

struct RunReport {
  Accel accel = Accel::BaselineSimd;
  double x_ss = 0.0;  // annotation only, set by the caller
  double x_us = 0.0;
  OutputTensor output;
  uint64_t total_blocks = 0;
  uint64_t executed_blocks = 0;
  uint64_t skipped_blocks = 0;
  uint64_t cycles = 0;
  uint64_t baseline_cycles = 0;

  double speedup() const {
    return cycles == 0 ? 0.0 : static_cast<double>(baseline_cycles) / static_cast<double>(cycles);
  }
  double mean_cycles_per_block() const {
    return total_blocks == 0 ? 0.0 : static_cast<double>(cycles) / static_cast<double>(total_blocks);
  }

  // accelerator,x_ss,x_us,total_blocks,executed_blocks,cycles,baseline_cycles,speedup
  std::string csv_row() const;
  static std::string csv_header();
};

RunReport run_baseline(const Tensor& weights, const Tensor& inputs, const ConvSpec& spec,
                       const CostProfile& profile = {}, bool sequential_mac = false);
RunReport run_sssa(const Tensor& weights, const Tensor& inputs, const ConvSpec& spec,
                   const CostProfile& profile = {});
RunReport run_ussa(const Tensor& weights, const Tensor& inputs, const ConvSpec& spec,
                   const CostProfile& profile = {});
RunReport run_csa(const Tensor& weights, const Tensor& inputs, const ConvSpec& spec,
                  const CostProfile& profile = {});

// Dispatch on the accelerator kind; baselines take raw weights, SSSA/CSA
// encoded ones.
RunReport run_layer(Accel accel, const Tensor& weights, const Tensor& inputs,
                    const ConvSpec& spec, const CostProfile& profile = {});

// Replay the SSSA/CSA while-loop over one encoded channel row and return the
// starting channel index of every block it visits. Throws ContractError if a
// skip code points past the end of the row.
std::vector<int> lookahead_visit_row(const int8_t* row, int c_total);

}  // namespace scfu
