// Lookahead skip-block encoding.
//
// A block is four consecutive int8 weights along the channel axis packed
// little-endian into one 32-bit word (w0 in bits 7:0 ... w3 in bits 31:24).
// Encoding shifts each weight's low six bits up by one and stores one bit of
// the 4-bit skip code in each byte's LSB; the sign bit stays at bit 7. The
// skip code of a block counts the consecutive all-zero blocks that follow it
// within the same (h, w) row, clamped to the cap.
#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "scfu/tensor.hpp"

namespace scfu {

struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kSkipCapMax = 15;

// Cap used when replaying the encoding loop's literal "< 4" guard, under
// which the counter can reach at most 4.
inline constexpr int kSkipCapLiteral = 4;

inline constexpr int kInt7Min = -64;
inline constexpr int kInt7Max = 63;

inline uint32_t pack_block(const std::array<int8_t, 4>& w) {
  return (static_cast<uint32_t>(static_cast<uint8_t>(w[0]))) |
         (static_cast<uint32_t>(static_cast<uint8_t>(w[1])) << 8) |
         (static_cast<uint32_t>(static_cast<uint8_t>(w[2])) << 16) |
         (static_cast<uint32_t>(static_cast<uint8_t>(w[3])) << 24);
}

inline std::array<int8_t, 4> unpack_block(uint32_t word) {
  return {static_cast<int8_t>(word & 0xFF), static_cast<int8_t>((word >> 8) & 0xFF),
          static_cast<int8_t>((word >> 16) & 0xFF),
          static_cast<int8_t>((word >> 24) & 0xFF)};
}

// Recover the 7-bit two's-complement weight from an encoded byte
// (bits {7, 6:1}; bit 0 is the skip bit and is ignored).
inline int8_t decode_weight(int8_t byte) {
  const uint8_t b = static_cast<uint8_t>(byte);
  const int v = (b >> 1) & 0x3F;
  return static_cast<int8_t>((b & 0x80) ? v - 64 : v);
}

// True iff all four weights are zero. For encoded blocks the 7-bit decoded
// weights are tested, so set skip bits do not count as nonzero.
bool check_blk_skip(uint32_t block, bool encoded);

// Embed one bit of skip_blocks into each weight's LSB (weight i gets bit i).
// Weights must already be int7-clamped.
std::array<int8_t, 4> encode_last_bits(const std::array<int8_t, 4>& weights,
                                       unsigned skip_blocks);

// Reassemble the 4-bit skip code from the four byte LSBs of an encoded block.
inline unsigned extract_skip_code(uint32_t block) {
  return (block & 1u) | (((block >> 8) & 1u) << 1) | (((block >> 16) & 1u) << 2) |
         (((block >> 24) & 1u) << 3);
}

// Clamp every weight into [-64, 63].
Tensor int7_clamp(const Tensor& weights);

// Encode a whole kernel: every block gets the count of consecutive all-zero
// raw blocks that follow it in its (h, w) row, clamped to skip_cap. Works on
// 3D kernels and per-filter on 4D kernels. Throws RangeError on weights
// outside [-64, 63].
Tensor encode_kernel(const Tensor& weights, int skip_cap = kSkipCapMax);

// Decode an encoded tensor back to raw int7 weights (skip bits dropped).
Tensor decode_kernel(const Tensor& weights);

// Visit every block of an encoded/raw tensor: cb(filter, h, w, c, block_word).
void for_each_block(const Tensor& t,
                    const std::function<void(int, int, int, int, uint32_t)>& cb);

}  // namespace scfu
