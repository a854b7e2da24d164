#include "scfu/codec.hpp"

namespace scfu {

bool check_blk_skip(uint32_t block, bool encoded) {
  if (!encoded) return block == 0;
  const auto bytes = unpack_block(block);
  for (int8_t b : bytes)
    if (decode_weight(b) != 0) return false;
  return true;
}

std::array<int8_t, 4> encode_last_bits(const std::array<int8_t, 4>& weights,
                                       unsigned skip_blocks) {
  std::array<int8_t, 4> out{};
  for (int i = 0; i < 4; ++i) {
    const int w = weights[i];
    if (w < kInt7Min || w > kInt7Max)
      throw RangeError("weight outside int7 range [-64, 63]");
    uint8_t b = static_cast<uint8_t>(w);
    const uint8_t sign_bit = (b >> 7) & 1u;
    const uint8_t skip_bit = (skip_blocks >> i) & 1u;
    b &= 0b10111111;              // drop the bit after the sign
    b = (b << 1) & 0b01111110;    // make room at the LSB
    b |= skip_bit;
    b |= static_cast<uint8_t>(sign_bit << 7);
    out[i] = static_cast<int8_t>(b);
  }
  return out;
}

Tensor int7_clamp(const Tensor& weights) {
  Tensor out = weights;
  for (int8_t& w : out.data) {
    if (w < kInt7Min) w = kInt7Min;
    else if (w > kInt7Max) w = kInt7Max;
  }
  return out;
}

Tensor encode_kernel(const Tensor& weights, int skip_cap) {
  weights.check_consistent();
  if (weights.encoded) throw RangeError("tensor is already encoded");
  if (skip_cap < 1 || skip_cap > kSkipCapMax) throw RangeError("skip cap must be in 1..15");
  const int c_total = weights.channels();
  if (c_total % 4 != 0) throw ShapeError("channel count must be a multiple of 4");

  Tensor out = weights;
  const int64_t rows = weights.size() / c_total;
  for (int64_t row = 0; row < rows; ++row) {
    const int8_t* src = weights.data.data() + row * c_total;
    int8_t* dst = out.data.data() + row * c_total;
    for (int c = 0; c < c_total; c += 4) {
      // Lookahead over the raw blocks that follow within this row.
      int skip_blocks = 0;
      int i_nxt = c + 4;
      while (i_nxt < c_total && skip_blocks < skip_cap) {
        bool zero = src[i_nxt] == 0 && src[i_nxt + 1] == 0 && src[i_nxt + 2] == 0 &&
                    src[i_nxt + 3] == 0;
        if (!zero) break;
        ++skip_blocks;
        i_nxt += 4;
      }
      const auto enc = encode_last_bits({src[c], src[c + 1], src[c + 2], src[c + 3]},
                                        static_cast<unsigned>(skip_blocks));
      dst[c] = enc[0];
      dst[c + 1] = enc[1];
      dst[c + 2] = enc[2];
      dst[c + 3] = enc[3];
    }
  }
  out.encoded = true;
  return out;
}

Tensor decode_kernel(const Tensor& weights) {
  if (!weights.encoded) throw RangeError("tensor is not encoded");
  Tensor out = weights;
  for (int8_t& w : out.data) w = decode_weight(w);
  out.encoded = false;
  return out;
}

void for_each_block(const Tensor& t,
                    const std::function<void(int, int, int, int, uint32_t)>& cb) {
  t.check_consistent();
  const int c_total = t.channels();
  if (c_total % 4 != 0) throw ShapeError("channel count must be a multiple of 4");
  const int h = t.height(), w = t.width(), f = t.filters();
  const int8_t* p = t.data.data();
  for (int o = 0; o < f; ++o)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        for (int c = 0; c < c_total; c += 4) {
          cb(o, y, x, c, pack_block({p[0], p[1], p[2], p[3]}));
          p += 4;
        }
}

}  // namespace scfu
