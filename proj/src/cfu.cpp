#include "scfu/cfu.hpp"

namespace scfu {

static int32_t dot4_raw(uint32_t weights, uint32_t inputs) {
  const auto w = unpack_block(weights);
  const auto x = unpack_block(inputs);
  int32_t acc = 0;
  for (int k = 0; k < 4; ++k)
    acc += static_cast<int32_t>(w[k]) * static_cast<int32_t>(x[k]);
  return acc;
}

static int32_t dot4_decoded(uint32_t weights, uint32_t inputs) {
  const auto w = unpack_block(weights);
  const auto x = unpack_block(inputs);
  int32_t acc = 0;
  for (int k = 0; k < 4; ++k)
    acc += static_cast<int32_t>(decode_weight(w[k])) * static_cast<int32_t>(x[k]);
  return acc;
}

CfuResult simd_mac(uint32_t weights, uint32_t inputs) {
  return {dot4_raw(weights, inputs), 1};
}

CfuResult seq_mac_baseline(uint32_t weights, uint32_t inputs) {
  // Single sequential multiplier: four cycles regardless of zeros.
  return {dot4_raw(weights, inputs), 4};
}

CfuResult sssa_mac(uint32_t encoded_weights, uint32_t inputs) {
  return {dot4_decoded(encoded_weights, inputs), 1};
}

CfuResult ussa_vcmac(uint32_t weights, uint32_t inputs) {
  const auto w = unpack_block(weights);
  uint32_t nnz = 0;
  for (int8_t wk : w)
    if (wk != 0) ++nnz;
  return {dot4_raw(weights, inputs), nnz == 0 ? 1u : nnz};
}

CfuResult csa_vcmac(uint32_t encoded_weights, uint32_t inputs) {
  // Zero detection on the decoded 7-bit weights; a set skip bit alone does
  // not make a lane nonzero.
  const auto w = unpack_block(encoded_weights);
  uint32_t nnz = 0;
  for (int8_t wk : w)
    if (decode_weight(wk) != 0) ++nnz;
  return {dot4_decoded(encoded_weights, inputs), nnz == 0 ? 1u : nnz};
}

static uint32_t inc_indvar(uint32_t encoded_weights, uint32_t i) {
  return i + 4u * (extract_skip_code(encoded_weights) + 1u);
}

uint32_t sssa_inc_indvar(uint32_t encoded_weights, uint32_t i) {
  return inc_indvar(encoded_weights, i);
}

uint32_t csa_inc_indvar(uint32_t encoded_weights, uint32_t i) {
  return inc_indvar(encoded_weights, i);
}

CfuResult cfu_dispatch(CfuDesign design, unsigned funct7, uint32_t rs1, uint32_t rs2) {
  if (funct7 & 1u)
    return {static_cast<int32_t>(inc_indvar(rs1, rs2)), 1};
  return design == CfuDesign::Sssa ? sssa_mac(rs1, rs2) : csa_vcmac(rs1, rs2);
}

uint32_t pack_rtype(const RTypeInstruction& in) {
  if (in.opcode > 0x7F || in.funct7 > 0x7F || in.funct3 > 0x7 || in.rd > 0x1F ||
      in.rs1 > 0x1F || in.rs2 > 0x1F)
    throw RangeError("R-type field overflow");
  return (static_cast<uint32_t>(in.funct7) << 25) | (static_cast<uint32_t>(in.rs2) << 20) |
         (static_cast<uint32_t>(in.rs1) << 15) | (static_cast<uint32_t>(in.funct3) << 12) |
         (static_cast<uint32_t>(in.rd) << 7) | in.opcode;
}

RTypeInstruction unpack_rtype(uint32_t word) {
  RTypeInstruction in;
  in.opcode = word & 0x7F;
  in.rd = (word >> 7) & 0x1F;
  in.funct3 = (word >> 12) & 0x7;
  in.rs1 = (word >> 15) & 0x1F;
  in.rs2 = (word >> 20) & 0x1F;
  in.funct7 = (word >> 25) & 0x7F;
  return in;
}

}  // namespace scfu
