// Tensor containers and the dense integer convolution reference.
//
// All tensors are row-major with the channel dimension innermost, so a
// "block" of four consecutive weights along the input-channel axis is
// contiguous in memory. Weights are signed 8-bit; accumulation is plain
// signed 32-bit with no saturation.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace scfu {

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signed 8-bit tensor, 3D (H, W, C) or 4D (O, H, W, C), channels innermost.
// `encoded` is true once the lookahead skip codes have been embedded in the
// weight LSBs (see codec.hpp); raw tensors have it false.
struct Tensor {
  std::vector<int> dims;
  std::vector<int8_t> data;
  bool encoded = false;

  Tensor() = default;
  Tensor(std::vector<int> d, int8_t fill = 0)
      : dims(std::move(d)), data(static_cast<size_t>(element_count(dims)), fill) {}

  static int64_t element_count(const std::vector<int>& dims) {
    int64_t n = 1;
    for (int d : dims) {
      if (d <= 0) throw ShapeError("tensor dimension must be positive");
      n *= d;
    }
    return n;
  }

  int channels() const { return dims.empty() ? 0 : dims.back(); }
  int rank() const { return static_cast<int>(dims.size()); }

  // Number of filters: 1 for a 3D tensor, dims[0] for 4D.
  int filters() const { return rank() == 4 ? dims[0] : 1; }
  int height() const { return rank() == 4 ? dims[1] : dims[0]; }
  int width() const { return rank() == 4 ? dims[2] : dims[1]; }

  int64_t size() const { return static_cast<int64_t>(data.size()); }

  void check_consistent() const {
    if (element_count(dims) != size()) throw ShapeError("data length does not match dims");
  }

  bool operator==(const Tensor& o) const = default;
};

// 32-bit accumulator tensor produced by the convolution kernels.
struct OutputTensor {
  std::vector<int> dims;  // (out_h, out_w, out_c)
  std::vector<int32_t> data;

  bool operator==(const OutputTensor& o) const = default;
};

struct ConvSpec {
  int output_height = 0;
  int output_width = 0;
  int out_channels = 0;
  int in_channels = 0;
  int kernel_height = 0;
  int kernel_width = 0;
  int stride = 1;
  int padding = 0;

  // Derive a spec from a weight/input tensor pair (stride 1, no padding by
  // default). The paper's benchmark layers never state stride/padding, so
  // both stay configurable.
  static ConvSpec from_tensors(const Tensor& weights, const Tensor& inputs,
                               int stride = 1, int padding = 0);
};

// Plain triple-loop integer convolution; the reference every accelerated
// kernel is checked against for exact equality.
OutputTensor dense_conv_oracle(const Tensor& weights, const Tensor& inputs,
                               const ConvSpec& spec);

// Round the channel dimension up to a multiple of 4 with zero fill.
// Convolution output is unchanged (zeros annihilate).
Tensor pad_channels_to_multiple_of_4(const Tensor& t);

}  // namespace scfu
