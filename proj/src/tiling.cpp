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

#include "upsample/tiling.hpp"

#include <sstream>

#include "upsample/error.hpp"
#include "upsample/report.hpp"

namespace upsample {

std::string_view to_string(TiledAlgorithm a) noexcept {
  switch (a) {
    case TiledAlgorithm::kRevd2: return "revd2";
    case TiledAlgorithm::kRevd: return "revd";
    case TiledAlgorithm::kTdc: return "tdc";
    case TiledAlgorithm::kStrdAsConv: return "strd";
  }
  return "?";
}

TiledAlgorithm parse_tiled_algorithm(std::string_view name) {
  for (auto a : {TiledAlgorithm::kRevd2, TiledAlgorithm::kRevd, TiledAlgorithm::kTdc,
                 TiledAlgorithm::kStrdAsConv}) {
    if (name == to_string(a)) return a;
  }
  throw DomainError("unknown tiled algorithm '" + std::string(name) + "'");
}

void TilingScenario::validate() const {
  if (lanes < 1 || out_extent < 1 || stride < 1 || tile < 1) {
    throw DomainError("tiling scenario fields must all be >= 1");
  }
  if (tile > out_extent) {
    throw DomainError("tile " + std::to_string(tile) + " exceeds output extent " +
                      std::to_string(out_extent));
  }
}

bool TileLegality::legal(TiledAlgorithm a) const noexcept {
  switch (a) {
    case TiledAlgorithm::kRevd2: return revd2;
    case TiledAlgorithm::kRevd: return revd;
    case TiledAlgorithm::kTdc: return tdc;
    case TiledAlgorithm::kStrdAsConv: return strd_as_conv;
  }
  return false;
}

TileLegality tile_legality(std::uint64_t stride, std::uint64_t tile) {
  if (stride < 1 || tile < 1) throw DomainError("stride and tile must be >= 1");
  const bool aligned = tile % stride == 0;
  return {true, aligned, aligned, true};
}

TilingReport analyze(const TilingScenario& sc, TiledAlgorithm algorithm) {
  sc.validate();
  TilingReport rep;
  rep.scenario = sc;
  rep.algorithm = algorithm;
  rep.legal_for = tile_legality(sc.stride, sc.tile);
  if (!rep.legal_for.legal(algorithm)) {
    throw LegalityError(std::string(to_string(algorithm)) + " needs tile % S == 0, got tile " +
                        std::to_string(sc.tile) + " with S " + std::to_string(sc.stride));
  }
  const std::uint64_t per_axis = (sc.out_extent + sc.tile - 1) / sc.tile;
  rep.workloads = per_axis * per_axis;
  rep.passes = (rep.workloads + sc.lanes - 1) / sc.lanes;
  rep.utilization =
      static_cast<double>(rep.workloads) / static_cast<double>(rep.passes * sc.lanes);
  rep.overhead = static_cast<double>(rep.workloads * sc.tile * sc.tile) /
                 static_cast<double>(sc.out_extent * sc.out_extent);
  return rep;
}

std::string format_tiling_text(const TilingReport& r) {
  const auto yn = [](bool b) { return b ? "legal" : "illegal"; };
  std::ostringstream out;
  out << "algorithm:   " << to_string(r.algorithm) << '\n'
      << "scenario:    lanes=" << r.scenario.lanes << " out=" << r.scenario.out_extent
      << " stride=" << r.scenario.stride << " tile=" << r.scenario.tile << '\n'
      << "workloads:   " << r.workloads << '\n'
      << "passes:      " << r.passes << '\n'
      << "utilization: " << format_number(r.utilization) << '\n'
      << "overhead:    " << format_number(r.overhead) << '\n'
      << "legality:    revd2 " << yn(r.legal_for.revd2) << ", revd " << yn(r.legal_for.revd)
      << ", tdc " << yn(r.legal_for.tdc) << ", strd " << yn(r.legal_for.strd_as_conv) << '\n';
  return out.str();
}

std::string format_tiling_csv_row(const TilingReport& r) {
  std::ostringstream out;
  out << to_string(r.algorithm) << ',' << r.scenario.lanes << ',' << r.scenario.out_extent << ','
      << r.scenario.stride << ',' << r.scenario.tile << ',' << r.workloads << ',' << r.passes
      << ',' << format_number(r.utilization) << ',' << format_number(r.overhead) << ','
      << r.legal_for.revd2 << ',' << r.legal_for.revd << ',' << r.legal_for.tdc << ','
      << r.legal_for.strd_as_conv;
  return out.str();
}

}  // namespace upsample
