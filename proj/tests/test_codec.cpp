#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scfu/codec.hpp"
#include "scfu/tensor.hpp"
#include "scfu/workload.hpp"

using namespace scfu;

namespace {

Tensor row_tensor(const std::vector<int8_t>& bytes) {
  Tensor t({1, 1, static_cast<int>(bytes.size())});
  t.data = bytes;
  return t;
}

// Brute-force skip count: consecutive all-zero raw blocks after position c,
// within the row, clamped to cap.
int brute_skip_count(const std::vector<int8_t>& row, int c, int cap) {
  int count = 0;
  for (int b = c + 4; b + 3 < static_cast<int>(row.size()) && count < cap; b += 4) {
    if (row[b] || row[b + 1] || row[b + 2] || row[b + 3]) break;
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("encode_last_bits hand traces") {
  CHECK(encode_last_bits({3, 3, 3, 3}, 0b1111)[0] == static_cast<int8_t>(0b00000111));
  CHECK(encode_last_bits({-3, -3, -3, -3}, 0b1111)[0] == static_cast<int8_t>(0b11111011));
  CHECK(encode_last_bits({0, 0, 0, 0}, 0)[0] == 0);
  // bit i of the code lands in byte i's LSB
  const auto enc = encode_last_bits({1, 1, 1, 1}, 0b0101);
  CHECK((enc[0] & 1) == 1);
  CHECK((enc[1] & 1) == 0);
  CHECK((enc[2] & 1) == 1);
  CHECK((enc[3] & 1) == 0);
  CHECK_THROWS_AS(encode_last_bits({64, 0, 0, 0}, 0), RangeError);
  CHECK_THROWS_AS(encode_last_bits({-65, 0, 0, 0}, 0), RangeError);
}

TEST_CASE("decode_weight examples") {
  CHECK(decode_weight(static_cast<int8_t>(0b00000111)) == 3);
  CHECK(decode_weight(static_cast<int8_t>(0b11111011)) == -3);
  CHECK(decode_weight(static_cast<int8_t>(0b00000001)) == 0);
}

TEST_CASE("round trip exhaustive: 128 weights x 16 codes") {
  for (int w = -64; w <= 63; ++w)
    for (unsigned s = 0; s < 16; ++s) {
      const int8_t wi = static_cast<int8_t>(w);
      const auto enc = encode_last_bits({wi, wi, wi, wi}, s);
      for (int i = 0; i < 4; ++i) CHECK(decode_weight(enc[i]) == wi);
      CHECK(extract_skip_code(pack_block(enc)) == s);
    }
}

TEST_CASE("extract_skip_code bit assembly") {
  // LSBs (1,1,0,0) across bytes (w0..w3) -> code 0b0011
  const uint32_t block = pack_block({static_cast<int8_t>(0b00000001),
                                     static_cast<int8_t>(0b00000101),
                                     static_cast<int8_t>(0b00000100),
                                     static_cast<int8_t>(0b00000110)});
  CHECK(extract_skip_code(block) == 3);
  CHECK(extract_skip_code(pack_block({0, 0, 0, 0})) == 0);
  CHECK(extract_skip_code(pack_block({1, 1, 1, 1})) == 15);
}

TEST_CASE("check_blk_skip") {
  CHECK(check_blk_skip(pack_block({0, 0, 0, 0}), false));
  CHECK_FALSE(check_blk_skip(pack_block({0, 0, 1, 0}), false));
  // encoded all-zero weights with skip bits set
  const uint32_t enc = pack_block(encode_last_bits({0, 0, 0, 0}, 15));
  CHECK(check_blk_skip(enc, true));
  CHECK_FALSE(check_blk_skip(enc, false));
  CHECK_FALSE(check_blk_skip(pack_block(encode_last_bits({0, 1, 0, 0}, 15)), true));
}

TEST_CASE("encode_kernel 7-block row") {
  // [NZ, Z, Z, NZ, Z, NZ, NZ] -> codes (2, 1, 0, 1, 0, 0, 0)
  std::vector<int8_t> row(28, 0);
  row[0] = 5;          // block 0
  row[12] = -7;        // block 3
  row[20] = 1;         // block 5
  row[24] = 2;         // block 6
  const Tensor enc = encode_kernel(row_tensor(row));
  const int expected[7] = {2, 1, 0, 1, 0, 0, 0};
  for (int b = 0; b < 7; ++b) {
    const uint32_t word = pack_block({enc.data[b * 4], enc.data[b * 4 + 1],
                                      enc.data[b * 4 + 2], enc.data[b * 4 + 3]});
    CHECK(extract_skip_code(word) == static_cast<unsigned>(expected[b]));
  }
}

TEST_CASE("encode_kernel cap behavior") {
  // 20 zero blocks after one nonzero block
  std::vector<int8_t> row(21 * 4, 0);
  row[0] = 9;
  SUBCASE("default cap 15") {
    const Tensor enc = encode_kernel(row_tensor(row));
    CHECK(extract_skip_code(pack_block({enc.data[0], enc.data[1], enc.data[2], enc.data[3]})) ==
          15);
  }
  SUBCASE("literal cap 4") {
    const Tensor enc = encode_kernel(row_tensor(row), kSkipCapLiteral);
    CHECK(extract_skip_code(pack_block({enc.data[0], enc.data[1], enc.data[2], enc.data[3]})) ==
          4);
  }
  SUBCASE("dense row has all-zero codes") {
    std::vector<int8_t> dense(16, 1);
    const Tensor enc = encode_kernel(row_tensor(dense));
    for (int b = 0; b < 4; ++b)
      CHECK(extract_skip_code(pack_block({enc.data[b * 4], enc.data[b * 4 + 1],
                                          enc.data[b * 4 + 2], enc.data[b * 4 + 3]})) == 0);
  }
}

TEST_CASE("skip codes match brute-force scan on random sparse rows") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    SparsityConfig cfg;
    cfg.x_ss = 0.6;
    cfg.seed = seed;
    cfg.mode = SparsityMode::Iid;
    const Tensor raw = gen_semi_structured({2, 2, 64}, cfg);
    for (int cap : {15, 4, 1}) {
      const Tensor enc = encode_kernel(raw, cap);
      for (int row = 0; row < 4; ++row) {
        std::vector<int8_t> raw_row(raw.data.begin() + row * 64,
                                    raw.data.begin() + (row + 1) * 64);
        for (int c = 0; c < 64; c += 4) {
          const int64_t off = row * 64 + c;
          const uint32_t word = pack_block({enc.data[off], enc.data[off + 1],
                                            enc.data[off + 2], enc.data[off + 3]});
          CHECK(static_cast<int>(extract_skip_code(word)) == brute_skip_count(raw_row, c, cap));
        }
      }
    }
  }
}

TEST_CASE("encoding preserves weights and therefore convolution") {
  const SparsityConfig cfg{0.3, 0.4, 77, SparsityMode::Iid};
  const Tensor raw = gen_combined({2, 3, 3, 16}, cfg);
  const Tensor enc = encode_kernel(raw);
  CHECK(enc.encoded);
  CHECK(decode_kernel(enc).data == raw.data);

  const Tensor x = gen_dense({5, 5, 16}, 78);
  const ConvSpec spec = ConvSpec::from_tensors(raw, x);
  const Tensor dec = decode_kernel(enc);
  CHECK(dense_conv_oracle(raw, x, spec) == dense_conv_oracle(dec, x, spec));
}

TEST_CASE("zero weights encode to at most the skip bit") {
  SparsityConfig cfg;
  cfg.x_us = 0.5;
  cfg.seed = 5;
  cfg.mode = SparsityMode::Iid;
  const Tensor raw = gen_unstructured({3, 3, 32}, cfg);
  const Tensor enc = encode_kernel(raw);
  for (size_t i = 0; i < raw.data.size(); ++i)
    if (raw.data[i] == 0)
      CHECK((static_cast<uint8_t>(enc.data[i]) & 0xFE) == 0);
}

TEST_CASE("int7_clamp") {
  Tensor t({1, 1, 4});
  t.data = {127, -128, 40, 63};
  const Tensor c = int7_clamp(t);
  CHECK(c.data == std::vector<int8_t>{63, -64, 40, 63});
}

TEST_CASE("encode_kernel rejects bad inputs") {
  Tensor t({1, 1, 4});
  t.data = {127, 0, 0, 0};
  CHECK_THROWS_AS(encode_kernel(t), RangeError);
  CHECK_THROWS_AS(encode_kernel(gen_dense({1, 1, 8}, 0, -64, 63), 0), RangeError);
  CHECK_THROWS_AS(encode_kernel(gen_dense({1, 1, 8}, 0, -64, 63), 16), RangeError);
  Tensor odd = gen_dense({1, 1, 6}, 0, -64, 63);
  CHECK_THROWS_AS(encode_kernel(odd), ShapeError);
}
