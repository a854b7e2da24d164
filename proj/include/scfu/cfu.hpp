// Functional models of the custom instructions.
//
// Every instruction takes two 32-bit operands (rs1 = packed weight block,
// rs2 = packed activations or the induction variable) and reports both the
// result value and the clock cycles the hardware unit would charge:
//
//   simd_mac          1 cycle, four parallel 8x8 products
//   seq_mac_baseline  4 cycles always (single sequential multiplier)
//   sssa_mac          1 cycle, 7-bit decoded weights
//   ussa_vcmac        max(1, #nonzero weights) cycles
//   csa_vcmac         max(1, #nonzero decoded weights) cycles
//   *_inc_indvar      1 cycle, i += 4 * (skip code + 1)
#pragma once

#include <cstdint>

#include "scfu/codec.hpp"

namespace scfu {

struct CfuResult {
  int32_t value = 0;
  uint32_t cycles = 0;
};

CfuResult simd_mac(uint32_t weights, uint32_t inputs);
CfuResult seq_mac_baseline(uint32_t weights, uint32_t inputs);
CfuResult sssa_mac(uint32_t encoded_weights, uint32_t inputs);
CfuResult ussa_vcmac(uint32_t weights, uint32_t inputs);
CfuResult csa_vcmac(uint32_t encoded_weights, uint32_t inputs);

// i += 4 * (code + 1); always one cycle. i must be a multiple of 4.
uint32_t sssa_inc_indvar(uint32_t encoded_weights, uint32_t i);
uint32_t csa_inc_indvar(uint32_t encoded_weights, uint32_t i);

// funct7 values for the MAC / induction-variable instruction pair; the
// hardware routes on the LSB of funct7.
inline constexpr unsigned kFunct7Mac = 0;
inline constexpr unsigned kFunct7IncIndvar = 1;

enum class CfuDesign { Sssa, Csa };

// Single entry point per design: funct7 bit 0 selects MAC (0) vs
// inc_indvar (1). For inc_indvar the returned value is the new induction
// variable and the cycle count is 1.
CfuResult cfu_dispatch(CfuDesign design, unsigned funct7, uint32_t rs1, uint32_t rs2);

// --- R-type instruction words -------------------------------------------

inline constexpr unsigned kOpcodeCustom0 = 0b0001011;  // 0x0B

struct RTypeInstruction {
  unsigned opcode = 0;  // 7 bits
  unsigned rd = 0;      // 5 bits
  unsigned funct3 = 0;  // 3 bits
  unsigned rs1 = 0;     // 5 bits
  unsigned rs2 = 0;     // 5 bits
  unsigned funct7 = 0;  // 7 bits

  bool operator==(const RTypeInstruction&) const = default;
};

// funct7 | rs2 | rs1 | funct3 | rd | opcode, MSB to LSB.
// Throws RangeError if a field exceeds its width.
uint32_t pack_rtype(const RTypeInstruction& instr);
RTypeInstruction unpack_rtype(uint32_t word);

}  // namespace scfu
