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

#ifndef UPSAMPLE_TRANSFORMS_HPP_
#define UPSAMPLE_TRANSFORMS_HPP_

#include "upsample/deconv.hpp"
#include "upsample/geometry.hpp"
#include "upsample/provenance.hpp"
#include "upsample/tensor.hpp"

namespace upsample {

/// Deconvolution geometry equivalent to a sub-pixel convolution:
/// S = r, K^D = rK, P^D = rP.
struct SubpixelDerivation {
  int kernel;
  int padding;
  int factor;
  DeconvParams deconv;
};

/// Deconvolution geometry equivalent to an NN resize convolution:
/// S = r, K^D = K + r - 1, P^D = P.
struct NnResizeDerivation {
  int kernel;
  int padding;
  int factor;
  DeconvParams deconv;
};

/// Throws InvalidKernelError unless K is odd and K == 2P + 1.
SubpixelDerivation derive_params_subpixel(int kernel, int padding, UpsampleFactor r);
NnResizeDerivation derive_params_nn(int kernel, int padding, UpsampleFactor r);

/// Deconvolution kernels plus the record of how they were produced.
struct TransformedKernels {
  DeconvKernels kernels;
  ProvenanceRecord provenance;
};

/// Sub-pixel conv kernels [r^2 O_C, I_C, K, K] -> deconv kernels
/// [I_C, O_C, rK, rK]. Interleaves the r^2 phase kernels the way the pixel
/// shuffle interleaves channels, with spatial indices reversed.
TransformedKernels weight_shuffle(const Tensor& conv_kernels, UpsampleFactor r);

/// Resize conv kernels [O_C, I_C, K, K] -> deconv kernels
/// [I_C, O_C, K + r - 1, K + r - 1]: the spatially reversed kernel is
/// accumulated at each of the r x r offsets.
TransformedKernels weight_convolution(const Tensor& conv_kernels, UpsampleFactor r);

/// Splits deconv kernels into S^2 phase slices of ceil(K/S) x ceil(K/S);
/// positions with no source tap are zero.
TdcKernels tdc_transform_kernels(const DeconvKernels& kernels, int stride);

/// MACs of the derived deconvolution relative to the NN resize convolution:
/// (r + K - 1)^2 / (K^2 r^2).
double mac_reduction_ratio_nn(int kernel, UpsampleFactor r);

}  // namespace upsample

#endif  // UPSAMPLE_TRANSFORMS_HPP_
