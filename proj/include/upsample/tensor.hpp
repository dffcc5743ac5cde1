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

#ifndef UPSAMPLE_TENSOR_HPP_
#define UPSAMPLE_TENSOR_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace upsample {

using Dims = std::vector<std::size_t>;

/// Dense row-major array of 32-bit floats.
///
/// Feature maps are rank 3 (channels, height, width); element (c, h, w) lives
/// at offset c*H*W + h*W + w. Kernel sets are rank 4 and the TDC slices are
/// rank 5, using the same last-index-fastest ordering.
class Tensor {
 public:
  Tensor() = default;

  /// All-zero tensor. Throws DimensionError for an empty extent list or any
  /// zero extent.
  explicit Tensor(Dims dims);

  /// Takes ownership of `data`; its length must equal the extent product.
  Tensor(Dims dims, std::vector<float> data);

  static Tensor zeros(Dims dims) { return Tensor(std::move(dims)); }

  const Dims& dims() const noexcept { return dims_; }
  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t extent(std::size_t axis) const { return dims_.at(axis); }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  float& operator[](std::size_t i) noexcept { return data_[i]; }
  float operator[](std::size_t i) const noexcept { return data_[i]; }

  std::size_t offset(std::size_t i0, std::size_t i1, std::size_t i2) const noexcept {
    return (i0 * dims_[1] + i1) * dims_[2] + i2;
  }
  std::size_t offset(std::size_t i0, std::size_t i1, std::size_t i2,
                     std::size_t i3) const noexcept {
    return ((i0 * dims_[1] + i1) * dims_[2] + i2) * dims_[3] + i3;
  }
  std::size_t offset(std::size_t i0, std::size_t i1, std::size_t i2,
                     std::size_t i3, std::size_t i4) const noexcept {
    return (((i0 * dims_[1] + i1) * dims_[2] + i2) * dims_[3] + i3) * dims_[4] + i4;
  }

  float& operator()(std::size_t c, std::size_t h, std::size_t w) noexcept {
    return data_[offset(c, h, w)];
  }
  float operator()(std::size_t c, std::size_t h, std::size_t w) const noexcept {
    return data_[offset(c, h, w)];
  }
  float& operator()(std::size_t a, std::size_t b, std::size_t c,
                    std::size_t d) noexcept {
    return data_[offset(a, b, c, d)];
  }
  float operator()(std::size_t a, std::size_t b, std::size_t c,
                   std::size_t d) const noexcept {
    return data_[offset(a, b, c, d)];
  }
  float& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d,
                    std::size_t e) noexcept {
    return data_[offset(a, b, c, d, e)];
  }
  float operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d,
                   std::size_t e) const noexcept {
    return data_[offset(a, b, c, d, e)];
  }

  /// Bitwise comparison of extents and payload.
  bool bitwise_equal(const Tensor& other) const noexcept;

 private:
  Dims dims_;
  std::vector<float> data_;
};

/// Product of extents; throws DimensionError on empty/zero extents or overflow.
std::size_t element_count(const Dims& dims);

/// Largest |a_i - b_i|. Throws ShapeError when extents differ.
double max_abs_diff(const Tensor& a, const Tensor& b);

}  // namespace upsample

#endif  // UPSAMPLE_TENSOR_HPP_
