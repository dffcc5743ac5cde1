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

#include "upsample/tensor.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "upsample/error.hpp"

namespace upsample {

std::size_t element_count(const Dims& dims) {
  if (dims.empty()) {
    throw DimensionError("tensor needs at least one extent");
  }
  std::size_t n = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] == 0) {
      throw DimensionError("extent " + std::to_string(i) + " is zero");
    }
    if (n > std::numeric_limits<std::size_t>::max() / dims[i]) {
      throw DimensionError("extent product overflows");
    }
    n *= dims[i];
  }
  return n;
}

Tensor::Tensor(Dims dims) : dims_(std::move(dims)) {
  data_.assign(element_count(dims_), 0.0f);
}

Tensor::Tensor(Dims dims, std::vector<float> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  if (element_count(dims_) != data_.size()) {
    throw DimensionError("payload holds " + std::to_string(data_.size()) +
                         " elements, extents need " +
                         std::to_string(element_count(dims_)));
  }
}

bool Tensor::bitwise_equal(const Tensor& other) const noexcept {
  return dims_ == other.dims_ &&
         (data_.empty() ||
          std::memcmp(data_.data(), other.data_.data(),
                      data_.size() * sizeof(float)) == 0);
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.dims() != b.dims()) {
    throw ShapeError("max_abs_diff: extents differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::fabs(static_cast<double>(a[i]) - static_cast<double>(b[i]));
    if (d > worst || std::isnan(d)) {
      worst = d;
    }
  }
  return worst;
}

}  // namespace upsample
