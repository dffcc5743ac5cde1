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

#ifndef UPSAMPLE_PROVENANCE_HPP_
#define UPSAMPLE_PROVENANCE_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "upsample/deconv.hpp"
#include "upsample/geometry.hpp"
#include "upsample/tensor.hpp"

namespace upsample {

enum class SourceAlgorithm { kSubPixel, kNnResize, kNativeDeconv };
enum class Transformation { kWeightShuffle, kWeightConvolution, kNone };

std::string_view to_string(SourceAlgorithm source) noexcept;
std::string_view to_string(Transformation transformation) noexcept;
/// Inverse of to_string; throws ParseError for unknown names.
SourceAlgorithm parse_source_algorithm(std::string_view name);
Transformation parse_transformation(std::string_view name);

/// Where a set of deconvolution kernels came from and the geometry it must
/// run with. `kernel`, `padding` and `factor` describe the trained
/// convolution; `deconv` the derived deconvolution.
struct ProvenanceRecord {
  SourceAlgorithm source = SourceAlgorithm::kNativeDeconv;
  Transformation transformation = Transformation::kNone;
  int kernel = 1;
  int padding = 0;
  int factor = 1;
  DeconvParams deconv;
  std::uint32_t checksum = 0;

  friend bool operator==(const ProvenanceRecord&, const ProvenanceRecord&) = default;
};

/// CRC-32 of the tensor payload as serialized (IEEE-754 little-endian).
std::uint32_t payload_checksum(const Tensor& tensor);

/// Throws ProvenanceError when the record's derived geometry does not follow
/// from its source parameters, or does not match the kernel extents.
void validate_provenance(const ProvenanceRecord& record, const DeconvKernels& kernels);

}  // namespace upsample

#endif  // UPSAMPLE_PROVENANCE_HPP_
