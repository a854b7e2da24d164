#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scfu/cfu.hpp"
#include "scfu/workload.hpp"

using namespace scfu;

namespace {

std::array<int8_t, 4> rand_block(Rng& rng, int lo = -128, int hi = 127) {
  return {rng.int8_in(lo, hi), rng.int8_in(lo, hi), rng.int8_in(lo, hi), rng.int8_in(lo, hi)};
}

}  // namespace

TEST_CASE("simd_mac") {
  CHECK(simd_mac(pack_block({1, 2, 3, 4}), pack_block({1, 1, 1, 1})).value == 10);
  CHECK(simd_mac(pack_block({1, 2, 3, 4}), pack_block({1, 1, 1, 1})).cycles == 1);
  CHECK(simd_mac(pack_block({0, 0, 0, 0}), pack_block({9, 9, 9, 9})).value == 0);
  const auto r = simd_mac(pack_block({-64, 63, -64, 63}), pack_block({127, 127, 127, 127}));
  CHECK(r.value == -254);
  CHECK(r.cycles == 1);
}

TEST_CASE("seq_mac_baseline is four cycles regardless of zeros") {
  CHECK(seq_mac_baseline(pack_block({0, 0, 0, 0}), pack_block({1, 2, 3, 4})).cycles == 4);
  CHECK(seq_mac_baseline(pack_block({0, 0, 0, 0}), 0).value == 0);
  const auto r = seq_mac_baseline(pack_block({1, 0, 0, 0}), pack_block({5, 7, 7, 7}));
  CHECK(r.value == 5);
  CHECK(r.cycles == 4);
  CHECK(seq_mac_baseline(pack_block({1, 2, 3, 4}), pack_block({1, 1, 1, 1})).value == 10);
}

TEST_CASE("sssa_mac decodes 7-bit weights, skip bits never matter") {
  const uint32_t zeros = pack_block(encode_last_bits({0, 0, 0, 0}, 15));
  CHECK(sssa_mac(zeros, pack_block({99, 99, 99, 99})).value == 0);
  CHECK(sssa_mac(zeros, 0).cycles == 1);
  for (unsigned s = 0; s < 16; ++s) {
    const uint32_t enc = pack_block(encode_last_bits({1, 2, 3, 4}, s));
    CHECK(sssa_mac(enc, pack_block({1, 1, 1, 1})).value == 10);
  }
  const uint32_t enc = pack_block(encode_last_bits({-3, 0, 0, 0}, 7));
  CHECK(sssa_mac(enc, pack_block({4, 1, 1, 1})).value == -12);
}

TEST_CASE("inc_indvar advances by 4*(code+1)") {
  auto block_with_code = [](unsigned code) {
    return pack_block(encode_last_bits({1, 1, 1, 1}, code));
  };
  CHECK(sssa_inc_indvar(block_with_code(0), 0) == 4);
  CHECK(sssa_inc_indvar(block_with_code(3), 8) == 24);
  CHECK(sssa_inc_indvar(block_with_code(15), 0) == 64);
  CHECK(csa_inc_indvar(block_with_code(0), 100) == 104);
  CHECK(csa_inc_indvar(block_with_code(1), 0) == 8);
  CHECK(csa_inc_indvar(block_with_code(15), 4) == 68);
}

TEST_CASE("ussa_vcmac cycles = max(1, nnz)") {
  CHECK(ussa_vcmac(pack_block({0, 0, 0, 0}), pack_block({1, 1, 1, 1})).cycles == 1);
  CHECK(ussa_vcmac(pack_block({0, 0, 0, 0}), pack_block({1, 1, 1, 1})).value == 0);
  const auto r = ussa_vcmac(pack_block({5, 0, -3, 0}), pack_block({2, 1, 4, 1}));
  CHECK(r.value == -2);
  CHECK(r.cycles == 2);
  const auto dense = ussa_vcmac(pack_block({1, 2, 3, 4}), pack_block({1, 1, 1, 1}));
  CHECK(dense.value == 10);
  CHECK(dense.cycles == 4);
}

TEST_CASE("csa_vcmac counts decoded nonzeros") {
  CHECK(csa_vcmac(pack_block(encode_last_bits({0, 0, 0, 0}, 15)), pack_block({7, 7, 7, 7}))
            .cycles == 1);
  const auto r =
      csa_vcmac(pack_block(encode_last_bits({5, 0, -3, 0}, 9)), pack_block({2, 1, 4, 1}));
  CHECK(r.value == -2);
  CHECK(r.cycles == 2);
  CHECK(csa_vcmac(pack_block(encode_last_bits({1, 1, 1, 1}, 3)), pack_block({1, 1, 1, 1}))
            .cycles == 4);
}

TEST_CASE("value equivalence across MAC models") {
  Rng rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto w = rand_block(rng, -64, 63);
    const auto x = rand_block(rng);
    const uint32_t wb = pack_block(w), xb = pack_block(x);
    const int32_t ref = simd_mac(wb, xb).value;
    CHECK(seq_mac_baseline(wb, xb).value == ref);
    CHECK(ussa_vcmac(wb, xb).value == ref);
    for (unsigned s : {0u, 5u, 15u}) {
      const uint32_t enc = pack_block(encode_last_bits(w, s));
      CHECK(sssa_mac(enc, xb).value == ref);
      CHECK(csa_vcmac(enc, xb).value == ref);
    }
    const uint32_t c = ussa_vcmac(wb, xb).cycles;
    CHECK(c >= 1);
    CHECK(c <= 4);
    CHECK(c <= seq_mac_baseline(wb, xb).cycles);
  }
}

TEST_CASE("skip-bit opacity: flipping LSBs changes only the increment") {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = rand_block(rng, -64, 63);
    const auto x = rand_block(rng);
    const uint32_t enc = pack_block(encode_last_bits(w, 0));
    for (int lane = 0; lane < 4; ++lane) {
      const uint32_t flipped = enc ^ (1u << (lane * 8));
      CHECK(sssa_mac(flipped, pack_block(x)).value == sssa_mac(enc, pack_block(x)).value);
      CHECK(csa_vcmac(flipped, pack_block(x)).value == csa_vcmac(enc, pack_block(x)).value);
      CHECK(sssa_inc_indvar(flipped, 0) ==
            4u * (extract_skip_code(flipped) + 1u));
    }
  }
}

TEST_CASE("funct7 LSB selects mac vs inc_indvar") {
  const auto w = encode_last_bits({2, 0, -5, 1}, 6);
  const uint32_t wb = pack_block(w);
  const uint32_t xb = pack_block({3, 3, 3, 3});
  CHECK(cfu_dispatch(CfuDesign::Sssa, kFunct7Mac, wb, xb).value == sssa_mac(wb, xb).value);
  CHECK(cfu_dispatch(CfuDesign::Csa, kFunct7Mac, wb, xb).cycles == csa_vcmac(wb, xb).cycles);
  CHECK(static_cast<uint32_t>(cfu_dispatch(CfuDesign::Sssa, kFunct7IncIndvar, wb, 8).value) ==
        sssa_inc_indvar(wb, 8));
  CHECK(static_cast<uint32_t>(cfu_dispatch(CfuDesign::Csa, kFunct7IncIndvar, wb, 8).value) ==
        csa_inc_indvar(wb, 8));
  // higher funct7 bits are don't-cares for the dispatch
  CHECK(cfu_dispatch(CfuDesign::Sssa, 0b1110, wb, xb).value == sssa_mac(wb, xb).value);
}

TEST_CASE("R-type packing") {
  RTypeInstruction zero;
  CHECK(pack_rtype(zero) == 0u);
  RTypeInstruction c0;
  c0.opcode = kOpcodeCustom0;
  CHECK(pack_rtype(c0) == 0x0000000Bu);

  Rng rng(77);
  for (int trial = 0; trial < 10000; ++trial) {
    RTypeInstruction in;
    in.opcode = static_cast<unsigned>(rng.below(128));
    in.rd = static_cast<unsigned>(rng.below(32));
    in.funct3 = static_cast<unsigned>(rng.below(8));
    in.rs1 = static_cast<unsigned>(rng.below(32));
    in.rs2 = static_cast<unsigned>(rng.below(32));
    in.funct7 = static_cast<unsigned>(rng.below(128));
    CHECK(unpack_rtype(pack_rtype(in)) == in);
  }

  RTypeInstruction bad;
  bad.opcode = 0x80;
  CHECK_THROWS_AS(pack_rtype(bad), RangeError);
}
