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

#ifndef UPSAMPLE_ERROR_HPP_
#define UPSAMPLE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace upsample {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero or otherwise invalid tensor extents.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operand extents that do not fit together (channel mismatch, divisibility).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Convolution / deconvolution geometry that yields no integral output.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Kernel size that cannot be same-padded (even, or K != 2P + 1).
class InvalidKernelError : public Error {
 public:
  using Error::Error;
};

/// Unsupported algorithm combination or arithmetic out of range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Output tiling that breaks functional correctness for an algorithm.
class LegalityError : public Error {
 public:
  using Error::Error;
};

/// Malformed tensor file, package file or hardware profile.
class ParseError : public Error {
 public:
  enum class Kind {
    kBadMagic,
    kVersionMismatch,
    kTruncated,
    kExtentOverflow,
    kZeroExtent,
    kBadRank,
    kTrailingBytes,
    kBadProfile,
    kBadProvenance,
  };

  ParseError(Kind kind, const std::string& what)
      : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Package payload does not match its recorded checksum.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Provenance record whose geometry violates the derivation invariants.
class ProvenanceError : public Error {
 public:
  using Error::Error;
};

}  // namespace upsample

#endif  // UPSAMPLE_ERROR_HPP_
