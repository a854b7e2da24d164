#include "scfu/tensor.hpp"

namespace scfu {

ConvSpec ConvSpec::from_tensors(const Tensor& weights, const Tensor& inputs,
                                int stride, int padding) {
  if (inputs.rank() != 3) throw ShapeError("input tensor must be 3D (H, W, C)");
  if (weights.rank() != 3 && weights.rank() != 4)
    throw ShapeError("weight tensor must be 3D (H, W, C) or 4D (O, H, W, C)");
  if (weights.channels() != inputs.channels())
    throw ShapeError("weight/input channel mismatch");
  if (stride < 1) throw ShapeError("stride must be >= 1");
  if (padding < 0) throw ShapeError("padding must be >= 0");

  ConvSpec s;
  s.kernel_height = weights.height();
  s.kernel_width = weights.width();
  s.in_channels = weights.channels();
  s.out_channels = weights.filters();
  s.stride = stride;
  s.padding = padding;
  const int ih = inputs.dims[0] + 2 * padding;
  const int iw = inputs.dims[1] + 2 * padding;
  if (ih < s.kernel_height || iw < s.kernel_width)
    throw ShapeError("input smaller than kernel");
  s.output_height = (ih - s.kernel_height) / stride + 1;
  s.output_width = (iw - s.kernel_width) / stride + 1;
  return s;
}

static void check_conv_shapes(const Tensor& weights, const Tensor& inputs,
                              const ConvSpec& spec) {
  weights.check_consistent();
  inputs.check_consistent();
  if (inputs.rank() != 3) throw ShapeError("input tensor must be 3D");
  if (weights.rank() != 3 && weights.rank() != 4) throw ShapeError("weight tensor must be 3D or 4D");
  if (weights.channels() != spec.in_channels || inputs.channels() != spec.in_channels)
    throw ShapeError("channel count does not match spec");
  if (weights.height() != spec.kernel_height || weights.width() != spec.kernel_width)
    throw ShapeError("kernel dims do not match spec");
  if (weights.filters() != spec.out_channels)
    throw ShapeError("filter count does not match spec");
}

OutputTensor dense_conv_oracle(const Tensor& weights, const Tensor& inputs,
                               const ConvSpec& spec) {
  if (weights.encoded) throw ShapeError("dense_conv_oracle expects raw (unencoded) weights");
  check_conv_shapes(weights, inputs, spec);

  const int ih = inputs.dims[0], iw = inputs.dims[1], c_total = spec.in_channels;
  const int kh = spec.kernel_height, kw = spec.kernel_width;

  OutputTensor out;
  out.dims = {spec.output_height, spec.output_width, spec.out_channels};
  out.data.assign(static_cast<size_t>(spec.output_height) * spec.output_width * spec.out_channels, 0);

  for (int oy = 0; oy < spec.output_height; ++oy) {
    for (int ox = 0; ox < spec.output_width; ++ox) {
      for (int oc = 0; oc < spec.out_channels; ++oc) {
        int32_t acc = 0;
        for (int fy = 0; fy < kh; ++fy) {
          const int iy = oy * spec.stride + fy - spec.padding;
          if (iy < 0 || iy >= ih) continue;
          for (int fx = 0; fx < kw; ++fx) {
            const int ix = ox * spec.stride + fx - spec.padding;
            if (ix < 0 || ix >= iw) continue;
            const int8_t* wrow =
                weights.data.data() +
                ((static_cast<int64_t>(oc) * kh + fy) * kw + fx) * c_total;
            const int8_t* xrow =
                inputs.data.data() + (static_cast<int64_t>(iy) * iw + ix) * c_total;
            for (int c = 0; c < c_total; ++c)
              acc += static_cast<int32_t>(wrow[c]) * static_cast<int32_t>(xrow[c]);
          }
        }
        out.data[(static_cast<size_t>(oy) * spec.output_width + ox) * spec.out_channels + oc] = acc;
      }
    }
  }
  return out;
}

Tensor pad_channels_to_multiple_of_4(const Tensor& t) {
  t.check_consistent();
  const int c = t.channels();
  const int padded = (c + 3) / 4 * 4;
  if (padded == c) return t;

  Tensor out;
  out.dims = t.dims;
  out.dims.back() = padded;
  out.encoded = t.encoded;
  const int64_t rows = t.size() / c;
  out.data.assign(static_cast<size_t>(rows) * padded, 0);
  for (int64_t r = 0; r < rows; ++r)
    std::copy(t.data.begin() + r * c, t.data.begin() + (r + 1) * c,
              out.data.begin() + r * padded);
  return out;
}

}  // namespace scfu
