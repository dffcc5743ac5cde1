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

#include "upsample/io.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "json.hpp"
#include "upsample/error.hpp"

namespace upsample {

namespace {

using Kind = ParseError::Kind;

void put_u16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void get_bytes(std::istream& in, unsigned char* dst, std::size_t n, const char* what) {
  in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw ParseError(Kind::kTruncated, std::string("truncated ") + what);
  }
}

std::uint16_t get_u16(std::istream& in, const char* what) {
  unsigned char b[2];
  get_bytes(in, b, 2, what);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t get_u32(std::istream& in, const char* what) {
  unsigned char b[4];
  get_bytes(in, b, 4, what);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void require_stream(const std::ostream& out) {
  if (!out) throw IoError("write failed");
}

void require_eof(std::istream& in, const char* what) {
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ParseError(Kind::kTrailingBytes, std::string("trailing bytes after ") + what);
  }
}

}  // namespace

void write_tensor(std::ostream& out, const Tensor& tensor) {
  if (tensor.rank() == 0 || tensor.rank() > 255) {
    throw DimensionError("tensor rank must be 1..255 to serialize");
  }
  out.write(kTensorMagic, 4);
  put_u16(out, kTensorFormatVersion);
  out.put(static_cast<char>(tensor.rank()));
  for (std::size_t e : tensor.dims()) {
    if (e > 0xffffffffu) throw DimensionError("extent does not fit in 32 bits");
    put_u32(out, static_cast<std::uint32_t>(e));
  }
  std::vector<char> buf;
  buf.reserve(tensor.size() * 4);
  for (float v : tensor.data()) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  require_stream(out);
}

Tensor read_tensor(std::istream& in) {
  unsigned char magic[4];
  get_bytes(in, magic, 4, "magic");
  for (int i = 0; i < 4; ++i) {
    if (magic[i] != static_cast<unsigned char>(kTensorMagic[i])) {
      throw ParseError(Kind::kBadMagic, "not a tensor file (bad magic)");
    }
  }
  const std::uint16_t version = get_u16(in, "version");
  if (version != kTensorFormatVersion) {
    throw ParseError(Kind::kVersionMismatch,
                     "unsupported tensor format version " + std::to_string(version));
  }
  unsigned char rank = 0;
  get_bytes(in, &rank, 1, "rank");
  if (rank == 0) throw ParseError(Kind::kBadRank, "tensor rank is zero");

  Dims dims(rank);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    const std::uint32_t e = get_u32(in, "extents");
    if (e == 0) {
      throw ParseError(Kind::kZeroExtent, "extent " + std::to_string(i) + " is zero");
    }
    dims[i] = e;
    count *= e;
    if (count > kMaxTensorElements) {
      throw ParseError(Kind::kExtentOverflow, "tensor extents exceed the element limit");
    }
  }

  // Read in chunks so a lying header cannot force a huge allocation up front.
  std::vector<float> data;
  std::array<unsigned char, 1 << 16> chunk{};
  std::uint64_t remaining = count * 4;
  while (remaining > 0) {
    const auto n = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, chunk.size()));
    get_bytes(in, chunk.data(), n, "payload");
    for (std::size_t i = 0; i < n; i += 4) {
      const std::uint32_t bits = static_cast<std::uint32_t>(chunk[i]) |
                                 (static_cast<std::uint32_t>(chunk[i + 1]) << 8) |
                                 (static_cast<std::uint32_t>(chunk[i + 2]) << 16) |
                                 (static_cast<std::uint32_t>(chunk[i + 3]) << 24);
      data.push_back(std::bit_cast<float>(bits));
    }
    remaining -= n;
  }
  return Tensor(std::move(dims), std::move(data));
}

void write_tensor_file(const std::filesystem::path& path, const Tensor& tensor) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_tensor(out, tensor);
}

Tensor read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Tensor t = read_tensor(in);
  require_eof(in, "tensor");
  return t;
}

std::string provenance_to_json(const ProvenanceRecord& rec) {
  nlohmann::ordered_json j;
  j["format"] = "upsample-provenance";
  j["version"] = 1;
  j["source_algorithm"] = std::string(to_string(rec.source));
  j["transformation"] = std::string(to_string(rec.transformation));
  j["K"] = rec.kernel;
  j["P"] = rec.padding;
  j["r"] = rec.factor;
  j["S"] = rec.deconv.stride;
  j["K_D"] = rec.deconv.kernel;
  j["P_D"] = rec.deconv.padding;
  j["checksum"] = rec.checksum;
  return j.dump();
}

ProvenanceRecord provenance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(Kind::kBadProvenance, std::string("provenance is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != "upsample-provenance" ||
        j.at("version").get<int>() != 1) {
      throw ParseError(Kind::kVersionMismatch, "unsupported provenance format");
    }
    ProvenanceRecord rec;
    rec.source = parse_source_algorithm(j.at("source_algorithm").get<std::string>());
    rec.transformation = parse_transformation(j.at("transformation").get<std::string>());
    rec.kernel = j.at("K").get<int>();
    rec.padding = j.at("P").get<int>();
    rec.factor = j.at("r").get<int>();
    rec.deconv.stride = j.at("S").get<int>();
    rec.deconv.kernel = j.at("K_D").get<int>();
    rec.deconv.padding = j.at("P_D").get<int>();
    rec.checksum = j.at("checksum").get<std::uint32_t>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(Kind::kBadProvenance, std::string("malformed provenance record: ") + e.what());
  }
}

void write_package(std::ostream& out, const DeconvKernels& kernels,
                   const ProvenanceRecord& provenance) {
  validate_provenance(provenance, kernels);
  ProvenanceRecord stamped = provenance;
  stamped.checksum = payload_checksum(kernels.tensor());
  write_tensor(out, kernels.tensor());
  const std::string text = provenance_to_json(stamped);
  put_u32(out, static_cast<std::uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  require_stream(out);
}

Package read_package(std::istream& in) {
  Tensor weights = read_tensor(in);
  if (weights.rank() != 4 || weights.extent(2) != weights.extent(3)) {
    throw ParseError(Kind::kBadRank, "package kernels must be rank 4 with square extents");
  }
  const std::uint32_t len = get_u32(in, "provenance length");
  if (len > (1u << 20)) {
    throw ParseError(Kind::kExtentOverflow, "provenance block too large");
  }
  std::string text(len, '\0');
  get_bytes(in, reinterpret_cast<unsigned char*>(text.data()), len, "provenance");
  require_eof(in, "package");

  ProvenanceRecord rec = provenance_from_json(text);
  const std::uint32_t actual = payload_checksum(weights);
  if (actual != rec.checksum) {
    throw IntegrityError("kernel payload checksum mismatch (recorded " +
                         std::to_string(rec.checksum) + ", computed " + std::to_string(actual) +
                         ")");
  }
  DeconvKernels kernels(std::move(weights));
  validate_provenance(rec, kernels);
  return {std::move(kernels), rec};
}

void write_package_file(const std::filesystem::path& path, const DeconvKernels& kernels,
                        const ProvenanceRecord& provenance) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_package(out, kernels, provenance);
}

Package read_package_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_package(in);
}

}  // namespace upsample
