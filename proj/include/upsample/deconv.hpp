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

#ifndef UPSAMPLE_DECONV_HPP_
#define UPSAMPLE_DECONV_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "upsample/geometry.hpp"
#include "upsample/tensor.hpp"

namespace upsample {

/// Deconvolution weights laid out [I_C, O_C, K^D, K^D].
class DeconvKernels {
 public:
  /// Throws ShapeError unless `weights` is rank 4 with square spatial extents.
  explicit DeconvKernels(Tensor weights);

  const Tensor& tensor() const noexcept { return weights_; }
  std::size_t in_channels() const noexcept { return weights_.extent(0); }
  std::size_t out_channels() const noexcept { return weights_.extent(1); }
  int kernel_size() const noexcept { return static_cast<int>(weights_.extent(2)); }

 private:
  Tensor weights_;
};

/// TDC kernel slices laid out [O_C, I_C, S^2, K_T, K_T], K_T = ceil(K^D / S).
///
/// Slice n = S * p_h + p_w serves the output pixels whose row and column
/// phases, mod(o + P^D, S), are p_h and p_w.
class TdcKernels {
 public:
  /// Throws ShapeError when the slice tensor does not match (S, K^D).
  TdcKernels(Tensor slices, int stride, int source_kernel);

  const Tensor& tensor() const noexcept { return slices_; }
  std::size_t out_channels() const noexcept { return slices_.extent(0); }
  std::size_t in_channels() const noexcept { return slices_.extent(1); }
  std::size_t slice_count() const noexcept { return slices_.extent(2); }
  int slice_size() const noexcept { return static_cast<int>(slices_.extent(3)); }
  int stride() const noexcept { return stride_; }
  int source_kernel() const noexcept { return source_kernel_; }

 private:
  Tensor slices_;
  int stride_;
  int source_kernel_;
};

/// Rectangular window of the output plane, clipped to the output extents.
struct OutputTile {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  friend bool operator==(const OutputTile&, const OutputTile&) = default;
};

/// Row-major grid of tile_h x tile_w windows covering an out_h x out_w plane.
std::vector<OutputTile> make_tiles(std::size_t out_h, std::size_t out_w, std::size_t tile_h,
                                   std::size_t tile_w);

/// Output extents [O_C, O_H, O_W]; throws GeometryError / ShapeError.
Dims deconv_output_dims(const Tensor& input, const DeconvKernels& kernels,
                        const DeconvParams& params);

/// Input-space traversal: every input pixel scatters a K x K footprint into
/// the output, overlapping footprints summed. Writes outside the output are
/// dropped, which is how P^D crops.
Tensor deconv_standard(const Tensor& input, const DeconvKernels& kernels,
                       const DeconvParams& params, MacCounter* counter = nullptr);

/// Reverse looping with stride-hole skipping in the output space. The
/// per-tap output offsets are computed once per call (2K entries).
Tensor deconv_revd(const Tensor& input, const DeconvKernels& kernels,
                   const DeconvParams& params, MacCounter* counter = nullptr);

/// Computes one output tile with REVD. The tile origin and extent must be
/// multiples of S (an extent may instead reach the output edge); otherwise
/// LegalityError.
void deconv_revd_tile(const Tensor& input, const DeconvKernels& kernels,
                      const DeconvParams& params, const OutputTile& tile, Tensor& output);

/// How REVD2 finds the first kernel tap of each output pixel.
enum class Revd2Indexing {
  kModulo,   ///< mod(o + P, S) per pixel
  kCounter,  ///< running counter, reset when it reaches S
};

/// Reverse looping with stride-hole skipping in the weight space. Each output
/// pixel is a self-contained reduction over (i_c, k_h, k_w).
Tensor deconv_revd2(const Tensor& input, const DeconvKernels& kernels,
                    const DeconvParams& params,
                    Revd2Indexing indexing = Revd2Indexing::kModulo,
                    MacCounter* counter = nullptr);

/// Computes one output tile with REVD2. Any tile shape is legal; results are
/// bitwise identical to the corresponding pixels of deconv_revd2.
void deconv_revd2_tile(const Tensor& input, const DeconvKernels& kernels,
                       const DeconvParams& params, const OutputTile& tile, Tensor& output,
                       Revd2Indexing indexing = Revd2Indexing::kModulo);

/// Runs REVD2 over `tiles` in the given order on `threads` workers. Tiles must
/// be disjoint; they write straight into the shared output.
Tensor deconv_revd2_tiled(const Tensor& input, const DeconvKernels& kernels,
                          const DeconvParams& params, std::span<const OutputTile> tiles,
                          unsigned threads = 1);

/// Fractionally strided: zero insertion followed by a stride-1 convolution
/// with index-reversed kernels and padding K^D - 1 - P^D. The zero-inserted
/// map is copied to `zero_inserted` when given.
Tensor deconv_strd(const Tensor& input, const DeconvKernels& kernels,
                   const DeconvParams& params, MacCounter* counter = nullptr,
                   Tensor* zero_inserted = nullptr);

/// S^2 phase convolutions with slices from tdc_transform_kernels, each
/// writing directly to its strided output positions.
Tensor deconv_tdc(const Tensor& input, const TdcKernels& kernels, const DeconvParams& params,
                  MacCounter* counter = nullptr);

/// Computes one output tile with TDC; same alignment rule as deconv_revd_tile.
void deconv_tdc_tile(const Tensor& input, const TdcKernels& kernels,
                     const DeconvParams& params, const OutputTile& tile, Tensor& output);

/// Places in[c, h, w] at (c, S*h, S*w) of a [C, S(H-1)+1, S(W-1)+1] zero map.
Tensor zero_insert(const Tensor& input, int stride);

/// Deconv weights [I_C, O_C, K, K] -> conv weights [O_C, I_C, K, K] with
/// both spatial axes reversed.
Tensor reverse_kernels(const DeconvKernels& kernels);

namespace detail {

/// deconv_strd with the spatial reversal optionally skipped; only the
/// verification harness's self-test uses `reverse = false`.
Tensor deconv_strd_impl(const Tensor& input, const DeconvKernels& kernels,
                        const DeconvParams& params, bool reverse, MacCounter* counter,
                        Tensor* zero_inserted);

}  // namespace detail

}  // namespace upsample

#endif  // UPSAMPLE_DECONV_HPP_
