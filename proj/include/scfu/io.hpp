// SCFU1 tensor container.
//
//   line 1: ASCII magic "SCFU1"
//   line 2: single-line JSON header, e.g.
//           {"dims":[3,3,16],"dtype":"i8","layout":"rowmajor_c_innermost","encoded":false}
//   rest:   raw little-endian signed-byte payload, exactly prod(dims) bytes
//
// The header may carry an optional "gen" field recording the generator
// algorithm and seed that produced the tensor.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "scfu/tensor.hpp"

namespace scfu {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenInfo {
  std::string algorithm;
  uint64_t seed = 0;
};

void write_scfu1(std::ostream& os, const Tensor& t,
                 const std::optional<GenInfo>& gen = std::nullopt);
Tensor read_scfu1(std::istream& is);

void save_scfu1(const std::string& path, const Tensor& t,
                const std::optional<GenInfo>& gen = std::nullopt);
Tensor load_scfu1(const std::string& path);

}  // namespace scfu
