#include "scfu/exec.hpp"

#include <sstream>

namespace scfu {

const char* accel_name(Accel a) {
  switch (a) {
    case Accel::BaselineSimd: return "baseline-simd";
    case Accel::BaselineSeq: return "baseline-seq";
    case Accel::Sssa: return "sssa";
    case Accel::Ussa: return "ussa";
    case Accel::Csa: return "csa";
  }
  return "?";
}

Accel accel_from_name(const std::string& name) {
  if (name == "baseline-simd") return Accel::BaselineSimd;
  if (name == "baseline-seq") return Accel::BaselineSeq;
  if (name == "sssa") return Accel::Sssa;
  if (name == "ussa") return Accel::Ussa;
  if (name == "csa") return Accel::Csa;
  throw ContractError("unknown accelerator: " + name);
}

std::string RunReport::csv_header() {
  return "accelerator,x_ss,x_us,total_blocks,executed_blocks,cycles,baseline_cycles,speedup";
}

std::string RunReport::csv_row() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << accel_name(accel) << ',' << x_ss << ',' << x_us << ',' << total_blocks << ','
     << executed_blocks << ',' << cycles << ',' << baseline_cycles << ',' << speedup();
  return os.str();
}

std::vector<int> lookahead_visit_row(const int8_t* row, int c_total) {
  std::vector<int> visited;
  uint32_t i = 0;
  while (i < static_cast<uint32_t>(c_total)) {
    visited.push_back(static_cast<int>(i));
    const uint32_t block = pack_block({row[i], row[i + 1], row[i + 2], row[i + 3]});
    i = sssa_inc_indvar(block, i);
    if (i > static_cast<uint32_t>(c_total))
      throw ContractError("skip code points past the end of the channel row");
  }
  return visited;
}

namespace {

struct LayerContext {
  const Tensor& weights;
  const Tensor& inputs;
  const ConvSpec& spec;
  const CostProfile& profile;
  std::array<int8_t, 4> zero_block{};  // stands in for padded input rows

  const int8_t* weight_row(int oc, int fy, int fx) const {
    return weights.data.data() +
           ((static_cast<int64_t>(oc) * spec.kernel_height + fy) * spec.kernel_width + fx) *
               spec.in_channels;
  }

  // nullptr when the receptive-field position falls in the zero padding.
  const int8_t* input_row(int iy, int ix) const {
    if (iy < 0 || iy >= inputs.dims[0] || ix < 0 || ix >= inputs.dims[1]) return nullptr;
    return inputs.data.data() +
           (static_cast<int64_t>(iy) * inputs.dims[1] + ix) * spec.in_channels;
  }
};

void check_layer(const Tensor& weights, const Tensor& inputs, const ConvSpec& spec,
                 bool want_encoded) {
  weights.check_consistent();
  inputs.check_consistent();
  if (weights.encoded != want_encoded)
    throw ContractError(want_encoded ? "accelerator requires encoded weights"
                                     : "accelerator requires raw weights");
  if (spec.in_channels % 4 != 0) throw ShapeError("in_channels must be a multiple of 4");
  if (weights.channels() != spec.in_channels || inputs.channels() != spec.in_channels)
    throw ShapeError("channel count does not match spec");
  if (weights.filters() != spec.out_channels || weights.height() != spec.kernel_height ||
      weights.width() != spec.kernel_width)
    throw ShapeError("weight dims do not match spec");
}

// Runs the shared (oy, ox, oc, fy, fx) loop nest; RowFn processes one channel
// row and returns the partial accumulator while updating the report counters.
template <typename RowFn>
RunReport run_nest(Accel accel, const LayerContext& ctx, uint32_t baseline_cost_per_block,
                   RowFn&& row_fn) {
  const ConvSpec& spec = ctx.spec;
  RunReport rep;
  rep.accel = accel;
  rep.output.dims = {spec.output_height, spec.output_width, spec.out_channels};
  rep.output.data.assign(
      static_cast<size_t>(spec.output_height) * spec.output_width * spec.out_channels, 0);

  for (int oy = 0; oy < spec.output_height; ++oy)
    for (int ox = 0; ox < spec.output_width; ++ox)
      for (int oc = 0; oc < spec.out_channels; ++oc) {
        int32_t acc = 0;
        for (int fy = 0; fy < spec.kernel_height; ++fy)
          for (int fx = 0; fx < spec.kernel_width; ++fx) {
            const int iy = oy * spec.stride + fy - spec.padding;
            const int ix = ox * spec.stride + fx - spec.padding;
            const int8_t* xrow = ctx.input_row(iy, ix);
            acc += row_fn(ctx.weight_row(oc, fy, fx), xrow, rep);
          }
        rep.output.data[(static_cast<size_t>(oy) * spec.output_width + ox) * spec.out_channels +
                        oc] = acc;
      }

  rep.total_blocks = static_cast<uint64_t>(spec.output_height) * spec.output_width *
                     spec.out_channels * spec.kernel_height * spec.kernel_width *
                     (spec.in_channels / 4);
  rep.skipped_blocks = rep.total_blocks - rep.executed_blocks;
  rep.baseline_cycles =
      rep.total_blocks * (baseline_cost_per_block + ctx.profile.baseline_loop_overhead);
  return rep;
}

uint32_t load_input_block(const int8_t* xrow, int c) {
  if (!xrow) return 0;  // zero padding
  return pack_block({xrow[c], xrow[c + 1], xrow[c + 2], xrow[c + 3]});
}

}  // namespace

RunReport run_baseline(const Tensor& weights, const Tensor& inputs, const ConvSpec& spec,
                       const CostProfile& profile, bool sequential_mac) {
  check_layer(weights, inputs, spec, /*want_encoded=*/false);
  LayerContext ctx{weights, inputs, spec, profile};
  auto rep = run_nest(
      sequential_mac ? Accel::BaselineSeq : Accel::BaselineSimd, ctx,
      sequential_mac ? 4u : 1u,
      [&](const int8_t* wrow, const int8_t* xrow, RunReport& r) -> int32_t {
        int32_t acc = 0;
        for (int c = 0; c < spec.in_channels; c += 4) {
          const uint32_t wb = pack_block({wrow[c], wrow[c + 1], wrow[c + 2], wrow[c + 3]});
          const CfuResult res = sequential_mac ? seq_mac_baseline(wb, load_input_block(xrow, c))
                                               : simd_mac(wb, load_input_block(xrow, c));
          acc += res.value;
          r.cycles += res.cycles + profile.per_block_loop_overhead;
          ++r.executed_blocks;
        }
        return acc;
      });
  // The baseline is its own comparison point.
  rep.baseline_cycles = rep.cycles;
  return rep;
}

RunReport run_ussa(const Tensor& weights, const Tensor& inputs, const ConvSpec& spec,
                   const CostProfile& profile) {
  check_layer(weights, inputs, spec, /*want_encoded=*/false);
  LayerContext ctx{weights, inputs, spec, profile};
  return run_nest(Accel::Ussa, ctx, 4u,
                  [&](const int8_t* wrow, const int8_t* xrow, RunReport& r) -> int32_t {
                    int32_t acc = 0;
                    for (int c = 0; c < spec.in_channels; c += 4) {
                      const uint32_t wb =
                          pack_block({wrow[c], wrow[c + 1], wrow[c + 2], wrow[c + 3]});
                      const CfuResult res = ussa_vcmac(wb, load_input_block(xrow, c));
                      acc += res.value;
                      r.cycles += res.cycles + profile.per_block_loop_overhead;
                      ++r.executed_blocks;
                    }
                    return acc;
                  });
}

template <typename MacFn>
static RunReport run_lookahead(Accel accel, const Tensor& weights, const Tensor& inputs,
                               const ConvSpec& spec, const CostProfile& profile,
                               uint32_t baseline_cost, MacFn&& mac) {
  check_layer(weights, inputs, spec, /*want_encoded=*/true);
  LayerContext ctx{weights, inputs, spec, profile};
  return run_nest(accel, ctx, baseline_cost,
                  [&](const int8_t* wrow, const int8_t* xrow, RunReport& r) -> int32_t {
                    int32_t acc = 0;
                    uint32_t i = 0;
                    const uint32_t c_total = static_cast<uint32_t>(spec.in_channels);
                    while (i < c_total) {
                      const uint32_t wb = pack_block({wrow[i], wrow[i + 1], wrow[i + 2], wrow[i + 3]});
                      const CfuResult res = mac(wb, load_input_block(xrow, static_cast<int>(i)));
                      acc += res.value;
                      r.cycles +=
                          res.cycles + profile.inc_indvar_cost + profile.per_block_loop_overhead;
                      ++r.executed_blocks;
                      i = sssa_inc_indvar(wb, i);
                      if (i > c_total)
                        throw ContractError("skip code points past the end of the channel row");
                    }
                    return acc;
                  });
}

RunReport run_sssa(const Tensor& weights, const Tensor& inputs, const ConvSpec& spec,
                   const CostProfile& profile) {
  // SSSA is compared against the 1-cycle SIMD baseline.
  return run_lookahead(Accel::Sssa, weights, inputs, spec, profile, 1u, sssa_mac);
}

RunReport run_csa(const Tensor& weights, const Tensor& inputs, const ConvSpec& spec,
                  const CostProfile& profile) {
  // CSA, like USSA, is compared against the 4-cycle sequential baseline.
  return run_lookahead(Accel::Csa, weights, inputs, spec, profile, 4u, csa_vcmac);
}

RunReport run_layer(Accel accel, const Tensor& weights, const Tensor& inputs,
                    const ConvSpec& spec, const CostProfile& profile) {
  switch (accel) {
    case Accel::BaselineSimd: return run_baseline(weights, inputs, spec, profile, false);
    case Accel::BaselineSeq: return run_baseline(weights, inputs, spec, profile, true);
    case Accel::Sssa: return run_sssa(weights, inputs, spec, profile);
    case Accel::Ussa: return run_ussa(weights, inputs, spec, profile);
    case Accel::Csa: return run_csa(weights, inputs, spec, profile);
  }
  throw ContractError("unknown accelerator");
}

}  // namespace scfu
