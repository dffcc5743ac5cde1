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

#ifndef UPSAMPLE_OPS_HPP_
#define UPSAMPLE_OPS_HPP_

#include "upsample/geometry.hpp"
#include "upsample/tensor.hpp"

namespace upsample {

/// Direct convolution of a [I_C, I_H, I_W] map with [O_C, I_C, K, K] kernels.
///
/// Reads that land in the padding contribute zero. Each output pixel is summed
/// in (i_c, k_h, k_w) order. No bias.
Tensor conv2d(const Tensor& input, const Tensor& kernels, const ConvParams& params,
              MacCounter* counter = nullptr);

/// Channel-to-space rearrangement [r^2 C, H, W] -> [C, rH, rW].
Tensor pixel_shuffle(const Tensor& input, UpsampleFactor r);

/// Same-padded conv2d followed by pixel_shuffle (C-SP).
Tensor subpixel_conv(const Tensor& input, const Tensor& kernels, const ConvParams& params,
                     UpsampleFactor r, MacCounter* counter = nullptr);

/// Nearest-neighbour upsampling: every pixel becomes an r x r block.
Tensor nn_interpolate(const Tensor& input, UpsampleFactor r);

/// nn_interpolate followed by a same-padded conv2d (C-NN).
Tensor resize_conv(const Tensor& input, const Tensor& kernels, const ConvParams& params,
                   UpsampleFactor r, MacCounter* counter = nullptr);

namespace detail {

/// conv2d that also accepts a negative padding (which crops the input).
Tensor conv2d_signed_padding(const Tensor& input, const Tensor& kernels, int stride,
                             int padding, MacCounter* counter);

}  // namespace detail

}  // namespace upsample

#endif  // UPSAMPLE_OPS_HPP_
