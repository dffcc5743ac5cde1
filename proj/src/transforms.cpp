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

#include "upsample/transforms.hpp"

#include <string>

#include "upsample/error.hpp"

namespace upsample {

namespace {

void require_same_padded(int kernel, int padding) {
  if (kernel < 1 || kernel % 2 == 0) {
    throw InvalidKernelError("kernel size " + std::to_string(kernel) +
                             " cannot be same-padded; valid sizes are odd (3, 5, 7, 9, ...)");
  }
  if (kernel != 2 * padding + 1) {
    throw InvalidKernelError("kernel size " + std::to_string(kernel) + " and padding " +
                             std::to_string(padding) + " violate K = 2P + 1");
  }
}

// Square [O, I, K, K] conv kernels with odd K; returns K.
int conv_kernel_size(const Tensor& conv_kernels) {
  if (conv_kernels.rank() != 4 || conv_kernels.extent(2) != conv_kernels.extent(3)) {
    throw ShapeError("conv kernels must be rank 4 [O_C, I_C, K, K] with square extents");
  }
  const int k = static_cast<int>(conv_kernels.extent(2));
  if (k % 2 == 0) {
    throw InvalidKernelError("kernel size " + std::to_string(k) +
                             " cannot be same-padded; valid sizes are odd");
  }
  return k;
}

}  // namespace

SubpixelDerivation derive_params_subpixel(int kernel, int padding, UpsampleFactor r) {
  require_same_padded(kernel, padding);
  const int f = r.value();
  return {kernel, padding, f, DeconvParams{f * kernel, f, f * padding}};
}

NnResizeDerivation derive_params_nn(int kernel, int padding, UpsampleFactor r) {
  require_same_padded(kernel, padding);
  const int f = r.value();
  return {kernel, padding, f, DeconvParams{kernel + f - 1, f, padding}};
}

TransformedKernels weight_shuffle(const Tensor& conv_kernels, UpsampleFactor factor) {
  const int k = conv_kernel_size(conv_kernels);
  const auto r = static_cast<std::size_t>(factor.value());
  const std::size_t conv_out = conv_kernels.extent(0);
  if (conv_out % (r * r) != 0) {
    throw ShapeError("weight_shuffle: " + std::to_string(conv_out) +
                     " output channels not divisible by r^2=" + std::to_string(r * r));
  }
  const std::size_t in_c = conv_kernels.extent(1);
  const std::size_t out_c = conv_out / (r * r);
  const std::size_t kc = static_cast<std::size_t>(k);
  const std::size_t kd = r * kc;

  Tensor deconv({in_c, out_c, kd, kd});
  for (std::size_t ic = 0; ic < in_c; ++ic) {
    for (std::size_t oc = 0; oc < out_c; ++oc) {
      for (std::size_t kh = 0; kh < kd; ++kh) {
        for (std::size_t kw = 0; kw < kd; ++kw) {
          const std::size_t src_h = kc - kh / r - 1;
          const std::size_t src_w = kc - kw / r - 1;
          const std::size_t src_c = r * r * oc + r * (kh % r) + kw % r;
          // Conv kernels are stored output-channel first.
          deconv(ic, oc, kh, kw) = conv_kernels(src_c, ic, src_h, src_w);
        }
      }
    }
  }

  const SubpixelDerivation d = derive_params_subpixel(k, (k - 1) / 2, factor);
  ProvenanceRecord rec;
  rec.source = SourceAlgorithm::kSubPixel;
  rec.transformation = Transformation::kWeightShuffle;
  rec.kernel = d.kernel;
  rec.padding = d.padding;
  rec.factor = d.factor;
  rec.deconv = d.deconv;
  rec.checksum = payload_checksum(deconv);
  return {DeconvKernels(std::move(deconv)), rec};
}

TransformedKernels weight_convolution(const Tensor& conv_kernels, UpsampleFactor factor) {
  const int k = conv_kernel_size(conv_kernels);
  const auto r = static_cast<std::size_t>(factor.value());
  const std::size_t out_c = conv_kernels.extent(0);
  const std::size_t in_c = conv_kernels.extent(1);
  const std::size_t kc = static_cast<std::size_t>(k);
  const std::size_t kd = kc + r - 1;

  Tensor deconv({in_c, out_c, kd, kd});
  for (std::size_t ic = 0; ic < in_c; ++ic) {
    for (std::size_t oc = 0; oc < out_c; ++oc) {
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
          // Overlapping placements accumulate.
          for (std::size_t a = 0; a < kc; ++a) {
            for (std::size_t b = 0; b < kc; ++b) {
              deconv(ic, oc, i + a, j + b) += conv_kernels(oc, ic, kc - 1 - a, kc - 1 - b);
            }
          }
        }
      }
    }
  }

  const NnResizeDerivation d = derive_params_nn(k, (k - 1) / 2, factor);
  ProvenanceRecord rec;
  rec.source = SourceAlgorithm::kNnResize;
  rec.transformation = Transformation::kWeightConvolution;
  rec.kernel = d.kernel;
  rec.padding = d.padding;
  rec.factor = d.factor;
  rec.deconv = d.deconv;
  rec.checksum = payload_checksum(deconv);
  return {DeconvKernels(std::move(deconv)), rec};
}

TdcKernels tdc_transform_kernels(const DeconvKernels& kernels, int stride) {
  if (stride < 1) throw GeometryError("TDC stride must be >= 1");
  const std::int64_t s = stride;
  const std::int64_t k = kernels.kernel_size();
  const std::int64_t kt = ceil_div(k, s);
  const std::size_t in_c = kernels.in_channels();
  const std::size_t out_c = kernels.out_channels();
  const Tensor& w = kernels.tensor();

  Tensor slices({out_c, in_c, static_cast<std::size_t>(s * s), static_cast<std::size_t>(kt),
                 static_cast<std::size_t>(kt)});
  // Taps beyond K (the P_K = S*K_T - K padding) have no source and stay zero.
  for (std::size_t oc = 0; oc < out_c; ++oc) {
    for (std::size_t ic = 0; ic < in_c; ++ic) {
      for (std::int64_t kh = 0; kh < k; ++kh) {
        for (std::int64_t kw = 0; kw < k; ++kw) {
          const std::int64_t n = s * floor_mod(kh, s) + floor_mod(kw, s);
          const std::int64_t th = kt - ceil_div(kh + 1, s);
          const std::int64_t tw = kt - ceil_div(kw + 1, s);
          slices(oc, ic, static_cast<std::size_t>(n), static_cast<std::size_t>(th),
                 static_cast<std::size_t>(tw)) =
              w(ic, oc, static_cast<std::size_t>(kh), static_cast<std::size_t>(kw));
        }
      }
    }
  }
  return TdcKernels(std::move(slices), stride, kernels.kernel_size());
}

double mac_reduction_ratio_nn(int kernel, UpsampleFactor factor) {
  if (kernel < 1 || kernel % 2 == 0) {
    throw InvalidKernelError("kernel size " + std::to_string(kernel) + " is not a valid odd size");
  }
  const double r = factor.value();
  const double k = kernel;
  return (r + k - 1.0) * (r + k - 1.0) / (k * k * r * r);
}

}  // namespace upsample
