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

// Binary tensor files and kernel packages.
//
// Tensor file, all integers little-endian:
//
//   offset  size       field
//   0       4          magic "UPST"
//   4       2          version (u16, currently 1)
//   6       1          rank (u8, >= 1)
//   7       4 * rank   extents (u32 each, >= 1)
//   ...     4 * N      payload, N = product of extents, IEEE-754 binary32
//
// Package file: a tensor file holding [I_C, O_C, K^D, K^D] deconvolution
// kernels, then a u32 byte length and that many bytes of UTF-8 JSON with the
// provenance record:
//
//   {"format": "upsample-provenance", "version": 1,
//    "source_algorithm": "sub-pixel" | "nn-resize" | "native-deconv",
//    "transformation": "weight-shuffle" | "weight-convolution" | "none",
//    "K": int, "P": int, "r": int, "S": int, "K_D": int, "P_D": int,
//    "checksum": u32}
//
// `checksum` is the CRC-32 of the kernel payload bytes.

#ifndef UPSAMPLE_IO_HPP_
#define UPSAMPLE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "upsample/deconv.hpp"
#include "upsample/provenance.hpp"
#include "upsample/tensor.hpp"

namespace upsample {

inline constexpr char kTensorMagic[4] = {'U', 'P', 'S', 'T'};
inline constexpr std::uint16_t kTensorFormatVersion = 1;
/// Largest payload a reader accepts, in elements.
inline constexpr std::uint64_t kMaxTensorElements = std::uint64_t{1} << 31;

void write_tensor(std::ostream& out, const Tensor& tensor);
/// Reads exactly one tensor record; throws ParseError.
Tensor read_tensor(std::istream& in);

void write_tensor_file(const std::filesystem::path& path, const Tensor& tensor);
/// Like read_tensor, but also rejects trailing bytes.
Tensor read_tensor_file(const std::filesystem::path& path);

struct Package {
  DeconvKernels kernels;
  ProvenanceRecord provenance;
};

/// Serializes the provenance record as the JSON block described above.
std::string provenance_to_json(const ProvenanceRecord& record);
ProvenanceRecord provenance_from_json(const std::string& text);

void write_package(std::ostream& out, const DeconvKernels& kernels,
                   const ProvenanceRecord& provenance);
/// Throws ParseError, IntegrityError (checksum) or ProvenanceError (geometry).
Package read_package(std::istream& in);

void write_package_file(const std::filesystem::path& path, const DeconvKernels& kernels,
                        const ProvenanceRecord& provenance);
Package read_package_file(const std::filesystem::path& path);

}  // namespace upsample

#endif  // UPSAMPLE_IO_HPP_
