#include "scfu/analytics.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "scfu/codec.hpp"

namespace scfu {

static void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw RangeError("sparsity must be in [0, 1]");
}

static double binom4(int k) {
  static const double c[5] = {1, 4, 6, 4, 1};
  return c[k];
}

double ussa_c_analytical(double x) {
  check_x(x);
  double c = 0.0;
  for (int k = 0; k <= 4; ++k)
    c += binom4(k) * std::pow(x, k) * std::pow(1.0 - x, 4 - k) * (4 - k);
  return c;
}

double ussa_c_observed(double x) {
  check_x(x);
  double c = 0.0;
  for (int k = 0; k <= 3; ++k)
    c += binom4(k) * std::pow(x, k) * std::pow(1.0 - x, 4 - k) * (4 - k);
  c += std::pow(x, 4);  // the all-zero block still takes one cycle
  return c;
}

SpeedupPoint ussa_point(double x) {
  SpeedupPoint p;
  p.x = x;
  p.c_a = ussa_c_analytical(x);
  p.c_o = ussa_c_observed(x);
  p.s_a = p.c_a == 0.0 ? std::numeric_limits<double>::infinity() : 4.0 / p.c_a;
  p.s_o = 4.0 / p.c_o;
  return p;
}

double sssa_speedup_analytical(double x_ss) {
  check_x(x_ss);
  if (x_ss == 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (1.0 - x_ss);
}

double monte_carlo_ussa(double x, int64_t n_blocks, uint64_t seed) {
  check_x(x);
  if (n_blocks < 1) throw RangeError("n_blocks must be >= 1");
  Rng rng(seed);
  uint64_t cycles = 0;
  for (int64_t b = 0; b < n_blocks; ++b) {
    std::array<int8_t, 4> w{};
    for (int k = 0; k < 4; ++k)
      w[k] = rng.bernoulli(x) ? static_cast<int8_t>(0) : rng.nonzero_int7();
    cycles += ussa_vcmac(pack_block(w), 0).cycles;
  }
  return static_cast<double>(cycles) / static_cast<double>(n_blocks);
}

std::string sweep_csv_header() {
  return RunReport::csv_header() + ",c_a,c_o,s_a";
}

static std::string run_cell(const SweepCell& cell, const SweepOptions& opt, uint64_t seed) {
  SparsityConfig cfg;
  cfg.x_ss = cell.x_ss;
  cfg.x_us = cell.x_us;
  cfg.seed = seed;
  cfg.mode = opt.mode;
  Tensor weights = gen_combined(opt.dims, cfg);

  std::vector<int> in_dims = opt.input_dims;
  if (in_dims.empty()) {
    Tensor probe(opt.dims);
    in_dims = {probe.height(), probe.width(), probe.channels()};
  }
  const Tensor inputs = gen_dense(in_dims, seed ^ 0xa5a5a5a5ull);
  const ConvSpec spec = ConvSpec::from_tensors(weights, inputs);

  if (cell.accel == Accel::Sssa || cell.accel == Accel::Csa)
    weights = encode_kernel(weights, opt.skip_cap);

  RunReport rep = run_layer(cell.accel, weights, inputs, spec, opt.profile);
  rep.x_ss = cell.x_ss;
  rep.x_us = cell.x_us;

  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << rep.csv_row() << ',';
  // Overall zero fraction seen by a per-element skipper.
  const double x_total = cell.x_ss + (1.0 - cell.x_ss) * cell.x_us;
  if (cell.accel == Accel::Ussa || cell.accel == Accel::Csa)
    os << ussa_c_analytical(x_total) << ',' << ussa_c_observed(x_total) << ',';
  else
    os << ",,";
  if (cell.accel == Accel::Sssa || cell.accel == Accel::Csa)
    os << sssa_speedup_analytical(cell.x_ss);
  return os.str();
}

std::vector<std::string> sweep(const std::vector<SweepCell>& grid, const SweepOptions& opt) {
  std::vector<std::string> rows(grid.size());
  const int jobs = std::max(1, opt.jobs);
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));

  auto worker = [&](int tid) {
    try {
      for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
        rows[i] = run_cell(grid[i], opt, opt.seed + i);
    } catch (...) {
      errors[static_cast<size_t>(tid)] = std::current_exception();
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

}  // namespace scfu
