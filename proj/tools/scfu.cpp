// scfu — encoding toolchain and cycle-cost simulator front end.
//
// Subcommands: gen, prune, encode, run, sweep, analytic, verify, isa.
// Tensors travel between commands as SCFU1 files; reports are CSV rows.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "scfu/analytics.hpp"
#include "scfu/cfu.hpp"
#include "scfu/codec.hpp"
#include "scfu/exec.hpp"
#include "scfu/io.hpp"
#include "scfu/workload.hpp"

using namespace scfu;

namespace {

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> dims;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) dims.push_back(std::stoi(part));
  if (dims.size() != 3 && dims.size() != 4)
    throw CLI::ValidationError("--dims", "expected 3 or 4 comma-separated sizes");
  return dims;
}

void add_profile_flags(CLI::App* cmd, CostProfile& profile) {
  cmd->add_option("--overhead", profile.per_block_loop_overhead,
                  "loop overhead per executed block");
  cmd->add_option("--baseline-overhead", profile.baseline_loop_overhead,
                  "loop overhead per baseline block");
  cmd->add_option("--inc-cost", profile.inc_indvar_cost,
                  "cycles charged for inc_indvar (default 0 = overlapped)");
}

int cmd_gen(const std::string& dims_s, const std::string& mode, double x_us, double x_ss,
            uint64_t seed, bool iid, const std::string& out) {
  SparsityConfig cfg;
  cfg.x_us = x_us;
  cfg.x_ss = x_ss;
  cfg.seed = seed;
  cfg.mode = iid ? SparsityMode::Iid : SparsityMode::ExactRatio;
  const auto dims = parse_dims(dims_s);

  Tensor t;
  if (mode == "unstructured") t = gen_unstructured(dims, cfg);
  else if (mode == "semi") t = gen_semi_structured(dims, cfg);
  else if (mode == "combined") t = gen_combined(dims, cfg);
  else if (mode == "dense") t = gen_dense(dims, seed);
  else throw CLI::ValidationError("--mode", "expected unstructured|semi|combined|dense");

  save_scfu1(out, t, GenInfo{kRngAlgorithm, seed});
  return 0;
}

int cmd_encode(const std::string& in, const std::string& out, int skip_cap, bool alg1_literal,
               bool dump_codes) {
  Tensor t = load_scfu1(in);
  t = int7_clamp(t);
  if (alg1_literal) skip_cap = kSkipCapLiteral;
  const Tensor enc = encode_kernel(t, skip_cap);
  save_scfu1(out, enc);
  if (dump_codes)
    for_each_block(enc, [](int, int h, int w, int c, uint32_t block) {
      std::printf("%d,%d,%d,%u\n", h, w, c, extract_skip_code(block));
    });
  return 0;
}

Tensor load_or_gen_inputs(const std::string& inputs_path, const Tensor& weights,
                          uint64_t seed, const std::string& input_dims_s) {
  if (!inputs_path.empty()) return load_scfu1(inputs_path);
  std::vector<int> dims = input_dims_s.empty()
                              ? std::vector<int>{weights.height(), weights.width(),
                                                 weights.channels()}
                              : parse_dims(input_dims_s);
  return gen_dense(dims, seed ^ 0xa5a5a5a5ull);
}

int cmd_run(const std::string& weights_path, const std::string& inputs_path,
            const std::string& accel_s, const std::string& input_dims_s, uint64_t seed,
            int stride, int padding, const CostProfile& profile) {
  const Tensor weights = load_scfu1(weights_path);
  const Tensor inputs = load_or_gen_inputs(inputs_path, weights, seed, input_dims_s);
  const ConvSpec spec = ConvSpec::from_tensors(weights, inputs, stride, padding);
  const RunReport rep = run_layer(accel_from_name(accel_s), weights, inputs, spec, profile);
  std::cout << RunReport::csv_header() << "\n" << rep.csv_row() << "\n";
  return 0;
}

int cmd_sweep(const std::vector<std::string>& accels, const std::vector<double>& xss,
              const std::vector<double>& xus, SweepOptions opt, const std::string& out) {
  std::vector<SweepCell> grid;
  for (const auto& a : accels)
    for (double ss : xss.empty() ? std::vector<double>{0.0} : xss)
      for (double us : xus.empty() ? std::vector<double>{0.0} : xus)
        grid.push_back({accel_from_name(a), ss, us});

  const auto rows = sweep(grid, opt);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw IoError("cannot open for writing: " + out);
    os = &file;
  }
  *os << sweep_csv_header() << "\n";
  for (const auto& r : rows) *os << r << "\n";
  return 0;
}

int cmd_analytic(bool ussa, bool sssa, double x, double x_ss, double grid_step) {
  if (ussa) {
    if (grid_step > 0.0) {
      std::printf("x,s_a,s_o\n");
      for (double v = 0.0; v <= 1.0 + 1e-12; v += grid_step) {
        const SpeedupPoint p = ussa_point(std::min(v, 1.0));
        std::printf("%.6g,%.15g,%.15g\n", p.x, p.s_a, p.s_o);
      }
    } else {
      const SpeedupPoint p = ussa_point(x);
      std::printf("c_a=%.6g c_o=%.6g s_a=%.6g s_o=%.6g\n", p.c_a, p.c_o, p.s_a, p.s_o);
    }
  }
  if (sssa) std::printf("s_a=%.6g\n", sssa_speedup_analytical(x_ss));
  if (!ussa && !sssa) {
    std::cerr << "analytic: pass --ussa and/or --sssa\n";
    return 1;
  }
  return 0;
}

int cmd_verify(uint64_t seed, const std::string& dims_s, const std::string& input_dims_s,
               int skip_cap) {
  const auto dims = parse_dims(dims_s);
  const Tensor raw = gen_dense(dims, seed);
  Tensor probe(dims);
  const std::vector<int> in_dims = input_dims_s.empty()
                                       ? std::vector<int>{probe.height(), probe.width(),
                                                          probe.channels()}
                                       : parse_dims(input_dims_s);
  const Tensor inputs = gen_dense(in_dims, seed ^ 0xa5a5a5a5ull);
  const ConvSpec spec = ConvSpec::from_tensors(raw, inputs);

  const Tensor clamped = int7_clamp(raw);
  const Tensor encoded = encode_kernel(clamped, skip_cap);
  const OutputTensor oracle_raw = dense_conv_oracle(raw, inputs, spec);
  const OutputTensor oracle_int7 = dense_conv_oracle(clamped, inputs, spec);

  int ok = 0;
  const int total = 5;
  auto check = [&](const char* name, const OutputTensor& got, const OutputTensor& want) {
    if (got == want) {
      ++ok;
    } else {
      std::cerr << "MISMATCH: " << name << " differs from oracle\n";
    }
  };
  check("baseline-simd", run_baseline(raw, inputs, spec).output, oracle_raw);
  check("baseline-seq", run_baseline(raw, inputs, spec, {}, true).output, oracle_raw);
  check("ussa", run_ussa(raw, inputs, spec).output, oracle_raw);
  check("sssa", run_sssa(encoded, inputs, spec).output, oracle_int7);
  check("csa", run_csa(encoded, inputs, spec).output, oracle_int7);

  if (ok == total) {
    std::printf("OK: %d/%d accelerators match oracle\n", ok, total);
    return 0;
  }
  std::printf("FAIL: %d/%d accelerators match oracle\n", ok, total);
  return 1;
}

int cmd_isa() {
  struct Row {
    const char* name;
    unsigned funct7;
    const char* rs1;
    const char* rs2;
  };
  const Row rows[] = {
      {"cfu_simd_mac", kFunct7Mac, "weights", "inputs"},
      {"seq_mac_baseline", kFunct7Mac, "weights", "inputs"},
      {"sssa_mac", kFunct7Mac, "weights", "inputs"},
      {"sssa_inc_indvar", kFunct7IncIndvar, "weights", "indvar"},
      {"ussa_vcmac", kFunct7Mac, "weights", "inputs"},
      {"csa_vcmac", kFunct7Mac, "weights", "inputs"},
      {"csa_inc_indvar", kFunct7IncIndvar, "weights", "indvar"},
  };
  std::printf("%-18s %-8s %-10s %s\n", "instruction", "funct7", "template", ".word form");
  for (const auto& r : rows) {
    RTypeInstruction in;
    in.opcode = kOpcodeCustom0;
    in.funct7 = r.funct7;
    const uint32_t word = pack_rtype(in);
    std::printf("%-18s %-8u 0x%08X .word 0x%08X | (rd<<7) | (%s<<15) | (%s<<20)\n", r.name,
                r.funct7, word, word, r.rs1, r.rs2);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse-CFU encoding toolchain and cycle-cost simulator"};
  app.require_subcommand(1);

  // gen
  std::string dims = "3,3,16", mode = "unstructured", out;
  double x_us = 0.0, x_ss = 0.0;
  uint64_t seed = 0;
  bool iid = false;
  auto* gen = app.add_subcommand("gen", "generate a sparse weight tensor");
  gen->add_option("--dims", dims, "tensor dims, e.g. 3,3,16 or 8,3,3,16")->required();
  gen->add_option("--mode", mode, "unstructured|semi|combined|dense");
  gen->add_option("--x-us", x_us, "unstructured zero fraction");
  gen->add_option("--x-ss", x_ss, "all-zero block fraction");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_flag("--iid", iid, "IID masks instead of exact-ratio");
  gen->add_option("-o,--out", out, "output SCFU1 file")->required();

  // prune
  std::string prune_in, prune_out, granularity = "element";
  double target = 0.0;
  auto* prune = app.add_subcommand("prune", "magnitude-prune a weight tensor");
  prune->add_option("-i,--in", prune_in)->required();
  prune->add_option("-o,--out", prune_out)->required();
  prune->add_option("--target", target, "zero fraction to reach")->required();
  prune->add_option("--granularity", granularity, "element|block4");

  // encode
  std::string enc_in, enc_out;
  int skip_cap = kSkipCapMax;
  bool alg1_literal = false, dump_codes = false;
  auto* enc = app.add_subcommand("encode", "clamp to int7 and embed lookahead skip codes");
  enc->add_option("-i,--in", enc_in)->required();
  enc->add_option("-o,--out", enc_out)->required();
  enc->add_option("--skip-cap", skip_cap, "max skip code (1..15)")->check(CLI::Range(1, 15));
  enc->add_flag("--alg1-literal", alg1_literal, "use the literal '< 4' counter guard");
  enc->add_flag("--dump-codes", dump_codes, "print h,w,c,code per block");

  // run
  std::string run_weights, run_inputs, run_accel = "baseline-simd", run_input_dims;
  int stride = 1, padding = 0;
  CostProfile run_profile;
  auto* run = app.add_subcommand("run", "execute one layer and print a report row");
  run->add_option("-w,--weights", run_weights)->required();
  run->add_option("-x,--inputs", run_inputs, "input SCFU1 (random if omitted)");
  run->add_option("--input-dims", run_input_dims, "dims for generated inputs");
  run->add_option("--accel", run_accel, "baseline-simd|baseline-seq|sssa|ussa|csa");
  run->add_option("--seed", seed, "seed for generated inputs");
  run->add_option("--stride", stride);
  run->add_option("--padding", padding);
  add_profile_flags(run, run_profile);

  // sweep
  std::vector<std::string> sweep_accels;
  std::vector<double> sweep_xss, sweep_xus;
  SweepOptions sweep_opt;
  std::string sweep_dims = "3,3,64", sweep_out;
  bool sweep_iid = false;
  auto* sw = app.add_subcommand("sweep", "run a grid of (accel, x_ss, x_us) cells");
  sw->add_option("--accel", sweep_accels, "accelerators to sweep")->required();
  sw->add_option("--x-ss", sweep_xss, "block sparsity values");
  sw->add_option("--x-us", sweep_xus, "unstructured sparsity values");
  sw->add_option("--dims", sweep_dims, "weight tensor dims");
  sw->add_option("--seed", sweep_opt.seed);
  sw->add_option("--jobs", sweep_opt.jobs, "parallel cells");
  sw->add_option("--skip-cap", sweep_opt.skip_cap)->check(CLI::Range(1, 15));
  sw->add_flag("--iid", sweep_iid, "IID masks instead of exact-ratio");
  sw->add_option("-o,--out", sweep_out, "CSV output file (stdout if omitted)");
  add_profile_flags(sw, sweep_opt.profile);

  // analytic
  bool an_ussa = false, an_sssa = false;
  double an_x = 0.0, an_xss = 0.0, an_grid = 0.0;
  auto* an = app.add_subcommand("analytic", "closed-form cycle and speedup models");
  an->add_flag("--ussa", an_ussa, "print c_a, c_o, s_a, s_o");
  an->add_flag("--sssa", an_sssa, "print the block-skip speedup");
  an->add_option("--x", an_x, "sparsity for --ussa")->check(CLI::Range(0.0, 1.0));
  an->add_option("--x-ss", an_xss, "block sparsity for --sssa")->check(CLI::Range(0.0, 1.0));
  an->add_option("--grid", an_grid, "emit an (x, s_a, s_o) curve with this step");

  // verify
  std::string ver_dims = "3,3,16", ver_input_dims;
  int ver_cap = kSkipCapMax;
  auto* ver = app.add_subcommand("verify", "check all accelerators against the dense oracle");
  ver->add_option("--seed", seed);
  ver->add_option("--dims", ver_dims, "weight tensor dims");
  ver->add_option("--input-dims", ver_input_dims);
  ver->add_option("--skip-cap", ver_cap)->check(CLI::Range(1, 15));

  // isa
  auto* isa = app.add_subcommand("isa", "print custom instruction word encodings");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(dims, mode, x_us, x_ss, seed, iid, out);
    if (prune->parsed()) {
      PruneGranularity g;
      if (granularity == "element") g = PruneGranularity::Element;
      else if (granularity == "block4") g = PruneGranularity::Block4;
      else throw RangeError("granularity must be element or block4");
      save_scfu1(prune_out, magnitude_prune(load_scfu1(prune_in), target, g));
      return 0;
    }
    if (enc->parsed()) return cmd_encode(enc_in, enc_out, skip_cap, alg1_literal, dump_codes);
    if (run->parsed())
      return cmd_run(run_weights, run_inputs, run_accel, run_input_dims, seed, stride, padding,
                     run_profile);
    if (sw->parsed()) {
      sweep_opt.dims = parse_dims(sweep_dims);
      sweep_opt.mode = sweep_iid ? SparsityMode::Iid : SparsityMode::ExactRatio;
      return cmd_sweep(sweep_accels, sweep_xss, sweep_xus, sweep_opt, sweep_out);
    }
    if (an->parsed()) return cmd_analytic(an_ussa, an_sssa, an_x, an_xss, an_grid);
    if (ver->parsed()) return cmd_verify(seed, ver_dims, ver_input_dims, ver_cap);
    if (isa->parsed()) return cmd_isa();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
