// Copyright 2026 The Upsample Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "upsample/ops.hpp"

#include <cstdint>
#include <string>

#include "upsample/error.hpp"

namespace upsample {

void ConvParams::validate() const {
  if (kernel < 1 || stride < 1 || padding < 0) {
    throw GeometryError("conv params need K >= 1, S >= 1, P >= 0 (got K=" +
                        std::to_string(kernel) + " S=" + std::to_string(stride) +
                        " P=" + std::to_string(padding) + ")");
  }
}

void DeconvParams::validate() const {
  if (kernel < 1 || stride < 1 || padding < 0) {
    throw GeometryError("deconv params need K >= 1, S >= 1, P >= 0 (got K=" +
                        std::to_string(kernel) + " S=" + std::to_string(stride) +
                        " P=" + std::to_string(padding) + ")");
  }
}

UpsampleFactor::UpsampleFactor(int r) : r_(r) {
  if (r < 1) {
    throw GeometryError("upsampling factor must be >= 1, got " + std::to_string(r));
  }
}

namespace {

void require_rank(const Tensor& t, std::size_t rank, const char* what) {
  if (t.rank() != rank) {
    throw ShapeError(std::string(what) + " must be rank " + std::to_string(rank) +
                     ", got rank " + std::to_string(t.rank()));
  }
}

std::int64_t conv_extent(std::int64_t in, int k, int s, int p) {
  const std::int64_t span = in - k + 2 * static_cast<std::int64_t>(p);
  if (span < 0 || span % s != 0) {
    throw GeometryError("conv output extent (" + std::to_string(in) + " - " +
                        std::to_string(k) + " + 2*" + std::to_string(p) + ")/" +
                        std::to_string(s) + " + 1 is not a positive integer");
  }
  return span / s + 1;
}

}  // namespace

namespace detail {

Tensor conv2d_signed_padding(const Tensor& input, const Tensor& kernels, int stride,
                             int padding, MacCounter* counter) {
  require_rank(input, 3, "conv input");
  require_rank(kernels, 4, "conv kernels");
  if (kernels.extent(1) != input.extent(0)) {
    throw ShapeError("conv kernels expect " + std::to_string(kernels.extent(1)) +
                     " input channels, input has " + std::to_string(input.extent(0)));
  }
  if (kernels.extent(2) != kernels.extent(3)) {
    throw ShapeError("conv kernels must be square");
  }
  const auto in_c = static_cast<std::int64_t>(input.extent(0));
  const auto in_h = static_cast<std::int64_t>(input.extent(1));
  const auto in_w = static_cast<std::int64_t>(input.extent(2));
  const auto out_c = static_cast<std::int64_t>(kernels.extent(0));
  const int k = static_cast<int>(kernels.extent(2));
  const std::int64_t out_h = conv_extent(in_h, k, stride, padding);
  const std::int64_t out_w = conv_extent(in_w, k, stride, padding);

  Tensor out({static_cast<std::size_t>(out_c), static_cast<std::size_t>(out_h),
              static_cast<std::size_t>(out_w)});
  const float* x = input.data().data();
  const float* w = kernels.data().data();
  float* y = out.data().data();

  for (std::int64_t oc = 0; oc < out_c; ++oc) {
    for (std::int64_t oh = 0; oh < out_h; ++oh) {
      for (std::int64_t ow = 0; ow < out_w; ++ow) {
        float acc = 0.0f;
        for (std::int64_t ic = 0; ic < in_c; ++ic) {
          const float* wk = w + ((oc * in_c + ic) * k) * k;
          const float* xc = x + ic * in_h * in_w;
          for (int kh = 0; kh < k; ++kh) {
            const std::int64_t ih = stride * oh + kh - padding;
            if (ih < 0 || ih >= in_h) continue;
            for (int kw = 0; kw < k; ++kw) {
              const std::int64_t iw = stride * ow + kw - padding;
              if (iw < 0 || iw >= in_w) continue;
              acc += xc[ih * in_w + iw] * wk[kh * k + kw];
            }
          }
        }
        y[(oc * out_h + oh) * out_w + ow] = acc;
      }
    }
  }
  if (counter != nullptr) {
    counter->macs += static_cast<std::uint64_t>(out_c * out_h * out_w * in_c) *
                     static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
  }
  return out;
}

}  // namespace detail

Tensor conv2d(const Tensor& input, const Tensor& kernels, const ConvParams& params,
              MacCounter* counter) {
  params.validate();
  require_rank(kernels, 4, "conv kernels");
  if (static_cast<int>(kernels.extent(2)) != params.kernel ||
      static_cast<int>(kernels.extent(3)) != params.kernel) {
    throw ShapeError("conv kernel extents do not match K=" + std::to_string(params.kernel));
  }
  return detail::conv2d_signed_padding(input, kernels, params.stride, params.padding,
                                       counter);
}

Tensor pixel_shuffle(const Tensor& input, UpsampleFactor factor) {
  require_rank(input, 3, "pixel_shuffle input");
  const std::size_t r = static_cast<std::size_t>(factor.value());
  const std::size_t in_c = input.extent(0);
  if (in_c % (r * r) != 0) {
    throw ShapeError("pixel_shuffle: " + std::to_string(in_c) +
                     " channels not divisible by r^2=" + std::to_string(r * r));
  }
  const std::size_t out_c = in_c / (r * r);
  const std::size_t out_h = input.extent(1) * r;
  const std::size_t out_w = input.extent(2) * r;
  Tensor out({out_c, out_h, out_w});
  for (std::size_t oc = 0; oc < out_c; ++oc) {
    for (std::size_t oh = 0; oh < out_h; ++oh) {
      for (std::size_t ow = 0; ow < out_w; ++ow) {
        const std::size_t ic = r * r * oc + r * (oh % r) + ow % r;
        out(oc, oh, ow) = input(ic, oh / r, ow / r);
      }
    }
  }
  return out;
}

Tensor subpixel_conv(const Tensor& input, const Tensor& kernels, const ConvParams& params,
                     UpsampleFactor r, MacCounter* counter) {
  params.validate();
  if (!params.same_padded()) {
    throw GeometryError("subpixel_conv needs a same-padded convolution (S=1, K=2P+1)");
  }
  const std::size_t rr = static_cast<std::size_t>(r.value()) * r.value();
  if (kernels.rank() == 4 && kernels.extent(0) % rr != 0) {
    throw ShapeError("subpixel_conv: kernel output channels not divisible by r^2");
  }
  return pixel_shuffle(conv2d(input, kernels, params, counter), r);
}

Tensor nn_interpolate(const Tensor& input, UpsampleFactor factor) {
  require_rank(input, 3, "nn_interpolate input");
  const std::size_t r = static_cast<std::size_t>(factor.value());
  const std::size_t c = input.extent(0);
  const std::size_t out_h = input.extent(1) * r;
  const std::size_t out_w = input.extent(2) * r;
  Tensor out({c, out_h, out_w});
  for (std::size_t ch = 0; ch < c; ++ch) {
    for (std::size_t oh = 0; oh < out_h; ++oh) {
      for (std::size_t ow = 0; ow < out_w; ++ow) {
        out(ch, oh, ow) = input(ch, oh / r, ow / r);
      }
    }
  }
  return out;
}

Tensor resize_conv(const Tensor& input, const Tensor& kernels, const ConvParams& params,
                   UpsampleFactor r, MacCounter* counter) {
  params.validate();
  if (!params.same_padded()) {
    throw GeometryError("resize_conv needs a same-padded convolution (S=1, K=2P+1)");
  }
  return conv2d(nn_interpolate(input, r), kernels, params, counter);
}

}  // namespace upsample
