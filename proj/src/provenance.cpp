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

#include "upsample/provenance.hpp"

#include <zlib.h>

#include <array>
#include <bit>
#include <string>

#include "upsample/error.hpp"

namespace upsample {

std::string_view to_string(SourceAlgorithm source) noexcept {
  switch (source) {
    case SourceAlgorithm::kSubPixel: return "sub-pixel";
    case SourceAlgorithm::kNnResize: return "nn-resize";
    case SourceAlgorithm::kNativeDeconv: return "native-deconv";
  }
  return "?";
}

std::string_view to_string(Transformation transformation) noexcept {
  switch (transformation) {
    case Transformation::kWeightShuffle: return "weight-shuffle";
    case Transformation::kWeightConvolution: return "weight-convolution";
    case Transformation::kNone: return "none";
  }
  return "?";
}

SourceAlgorithm parse_source_algorithm(std::string_view name) {
  for (auto s : {SourceAlgorithm::kSubPixel, SourceAlgorithm::kNnResize,
                 SourceAlgorithm::kNativeDeconv}) {
    if (to_string(s) == name) return s;
  }
  throw ParseError(ParseError::Kind::kBadProvenance,
                   "unknown source algorithm '" + std::string(name) + "'");
}

Transformation parse_transformation(std::string_view name) {
  for (auto t : {Transformation::kWeightShuffle, Transformation::kWeightConvolution,
                 Transformation::kNone}) {
    if (to_string(t) == name) return t;
  }
  throw ParseError(ParseError::Kind::kBadProvenance,
                   "unknown transformation '" + std::string(name) + "'");
}

std::uint32_t payload_checksum(const Tensor& tensor) {
  uLong crc = crc32(0L, Z_NULL, 0);
  std::array<unsigned char, 4096> buf{};
  std::size_t fill = 0;
  for (float v : tensor.data()) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int b = 0; b < 4; ++b) buf[fill++] = static_cast<unsigned char>(bits >> (8 * b));
    if (fill == buf.size()) {
      crc = crc32(crc, buf.data(), static_cast<uInt>(fill));
      fill = 0;
    }
  }
  crc = crc32(crc, buf.data(), static_cast<uInt>(fill));
  return static_cast<std::uint32_t>(crc);
}

namespace {

[[noreturn]] void fail(const ProvenanceRecord& rec, const std::string& why) {
  throw ProvenanceError(std::string(to_string(rec.source)) + "/" +
                        std::string(to_string(rec.transformation)) + ": " + why);
}

}  // namespace

void validate_provenance(const ProvenanceRecord& rec, const DeconvKernels& kernels) {
  const DeconvParams& d = rec.deconv;
  if (d.kernel < 1 || d.stride < 1 || d.padding < 0) fail(rec, "derived geometry out of range");
  if (rec.factor < 1 || rec.kernel < 1 || rec.padding < 0) fail(rec, "source geometry out of range");
  if (kernels.kernel_size() != d.kernel) {
    fail(rec, "kernel extent " + std::to_string(kernels.kernel_size()) + " but K^D=" +
                  std::to_string(d.kernel));
  }

  const int k = rec.kernel;
  const int p = rec.padding;
  const int r = rec.factor;
  switch (rec.source) {
    case SourceAlgorithm::kSubPixel:
      if (rec.transformation != Transformation::kWeightShuffle) fail(rec, "needs weight-shuffle");
      if (k != 2 * p + 1) fail(rec, "K != 2P + 1");
      if (d.stride != r || d.kernel != r * k || d.padding != r * p) {
        fail(rec, "expected S=r, K^D=rK, P^D=rP");
      }
      break;
    case SourceAlgorithm::kNnResize:
      if (rec.transformation != Transformation::kWeightConvolution) {
        fail(rec, "needs weight-convolution");
      }
      if (k != 2 * p + 1) fail(rec, "K != 2P + 1");
      if (d.stride != r || d.kernel != k + r - 1 || d.padding != p) {
        fail(rec, "expected S=r, K^D=K+r-1, P^D=P");
      }
      break;
    case SourceAlgorithm::kNativeDeconv:
      if (rec.transformation != Transformation::kNone) fail(rec, "needs transformation none");
      if (d.stride != r || d.kernel != k || d.padding != p) {
        fail(rec, "native deconv must record K=K^D, P=P^D, r=S");
      }
      break;
  }
}

}  // namespace upsample
