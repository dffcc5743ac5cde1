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

#include "upsample/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "upsample/costmodel.hpp"
#include "upsample/deconv.hpp"
#include "upsample/error.hpp"
#include "upsample/io.hpp"
#include "upsample/profile.hpp"
#include "upsample/report.hpp"
#include "upsample/tiling.hpp"
#include "upsample/transforms.hpp"
#include "upsample/verify.hpp"

namespace upsample {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::uint64_t parse_count(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
    throw UsageError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

/// "A..B" or "A".
std::vector<std::uint64_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  const std::uint64_t lo = parse_count(std::string_view(s).substr(0, dots), "r-range");
  const std::uint64_t hi =
      dots == std::string::npos ? lo : parse_count(std::string_view(s).substr(dots + 2), "r-range");
  if (hi < lo) throw UsageError("empty r-range '" + s + "'");
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = lo; r <= hi; ++r) out.push_back(r);
  return out;
}

/// "TxT" or "T".
std::pair<std::size_t, std::size_t> parse_tiles(const std::string& s) {
  const auto x = s.find_first_of("xX");
  const auto h = parse_count(std::string_view(s).substr(0, x), "tile size");
  const auto w = x == std::string::npos ? h : parse_count(std::string_view(s).substr(x + 1), "tile size");
  return {h, w};
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
  std::vector<Algorithm> out;
  std::string_view rest = list;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    if (!item.empty()) out.push_back(parse_algorithm(item));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (out.empty()) throw UsageError("no algorithms given");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write to " + path + " failed");
}

std::string dims_string(const Dims& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + std::to_string(d[i]);
  return s + "]";
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  VerifyOptions opt;
  bool quiet = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const VerifyReport rep = run_verification(a.opt);
  std::size_t failed = 0;
  for (const CaseResult& c : rep.cases) {
    if (!c.passed) ++failed;
    if (a.quiet && c.passed) continue;
    out << (c.passed ? "ok   " : "FAIL ") << c.kind << "  " << c.params
        << "  max_abs_err=" << format_number(c.max_error) << '\n';
  }
  out << rep.cases.size() - failed << '/' << rep.cases.size() << " cases within tolerance "
      << format_number(a.opt.tolerance) << " (seed " << a.opt.seed << ")\n";
  return rep.passed() ? kExitOk : kExitVerifyFailed;
}

// ---- transform ------------------------------------------------------------

struct TransformArgs {
  std::string from;
  std::string kernels;
  int r = 2;
  std::string out;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
  const UpsampleFactor factor(a.r);
  const Tensor conv = read_tensor_file(a.kernels);
  if (conv.rank() != 4 || conv.extent(2) != conv.extent(3)) {
    throw ShapeError("conv kernels must be rank 4 [O_C, I_C, K, K] with square K x K");
  }
  const bool shuffle = a.from == "subpixel";
  const TransformedKernels t = shuffle ? weight_shuffle(conv, factor) : weight_convolution(conv, factor);
  write_package_file(a.out, t.kernels, t.provenance);

  const ProvenanceRecord& p = t.provenance;
  out << "source: " << to_string(p.source) << " K=" << p.kernel << " P=" << p.padding
      << " r=" << p.factor << '\n'
      << "deconv: S=" << p.deconv.stride << " K_D=" << p.deconv.kernel
      << " P_D=" << p.deconv.padding << '\n'
      << "kernels: " << dims_string(t.kernels.tensor().dims()) << '\n';
  if (!shuffle) {
    const double ratio = mac_reduction_ratio_nn(p.kernel, factor);
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.3f", ratio);
    out << "mac_ratio: " << pct << " (deconv MACs / resize conv MACs)\n";
  }
  out << "wrote " << a.out << '\n';
  return kExitOk;
}

// ---- infer ----------------------------------------------------------------

struct InferArgs {
  std::string input;
  std::string package;
  std::string variant = "revd2";
  std::string tiles;
  unsigned threads = 0;
  std::string out;
};

int cmd_infer(const InferArgs& a, std::ostream& out) {
  const Tensor input = read_tensor_file(a.input);
  const Package pkg = read_package_file(a.package);
  const DeconvParams& p = pkg.provenance.deconv;
  if (input.rank() != 3) throw ShapeError("input must be rank 3 [C, H, W]");
  if (input.extent(0) != pkg.kernels.in_channels()) {
    throw ShapeError("input has " + std::to_string(input.extent(0)) +
                     " channels but the package expects " +
                     std::to_string(pkg.kernels.in_channels()));
  }
  const Dims dims = deconv_output_dims(input, pkg.kernels, p);

  Tensor result;
  std::size_t tile_count = 0;
  if (a.tiles.empty()) {
    if (a.variant == "standard") result = deconv_standard(input, pkg.kernels, p);
    else if (a.variant == "revd") result = deconv_revd(input, pkg.kernels, p);
    else if (a.variant == "revd2") result = deconv_revd2(input, pkg.kernels, p);
    else if (a.variant == "strd") result = deconv_strd(input, pkg.kernels, p);
    else result = deconv_tdc(input, tdc_transform_kernels(pkg.kernels, p.stride), p);
  } else {
    const auto [th, tw] = parse_tiles(a.tiles);
    if (a.variant == "standard" || a.variant == "strd") {
      throw LegalityError(a.variant + " has no tiled execution; use revd2, revd or tdc");
    }
    const TiledAlgorithm algo = parse_tiled_algorithm(a.variant);
    for (std::size_t t : {th, tw}) {
      if (!tile_legality(static_cast<std::uint64_t>(p.stride), t).legal(algo)) {
        throw LegalityError(a.variant + " needs tile extents divisible by S=" +
                            std::to_string(p.stride) + ", got " + a.tiles);
      }
    }
    const auto tiles = make_tiles(dims[1], dims[2], th, tw);
    tile_count = tiles.size();
    if (algo == TiledAlgorithm::kRevd2) {
      const unsigned threads =
          a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
      result = deconv_revd2_tiled(input, pkg.kernels, p, tiles, threads);
    } else {
      result = Tensor(dims);
      std::optional<TdcKernels> tdc;
      if (algo == TiledAlgorithm::kTdc) tdc = tdc_transform_kernels(pkg.kernels, p.stride);
      for (const OutputTile& tile : tiles) {
        if (algo == TiledAlgorithm::kRevd) deconv_revd_tile(input, pkg.kernels, p, tile, result);
        else deconv_tdc_tile(input, *tdc, p, tile, result);
      }
    }
  }
  write_tensor_file(a.out, result);
  out << "wrote " << a.out << ' ' << dims_string(result.dims()) << " via " << a.variant;
  if (tile_count) out << " (" << tile_count << " tiles of " << a.tiles << ')';
  out << '\n';
  return kExitOk;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string profile = "gtx680";
  std::string algos = "C-SP,C-NN,D-SP,D-SP/STRD,D-SP/TDC,D-NN,D-NN/STRD,D-NN/TDC";
  std::string r_range = "1..4";
  std::uint64_t h = 1024, c = 3, k = 3, bytes = 4;
  std::string csv, svg;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const std::vector<Algorithm> algos = parse_algorithms(a.algos);
  const std::vector<std::uint64_t> factors = parse_range(a.r_range);
  WorkloadSpec w;
  w.height = a.h;
  w.channels = a.c;
  w.kernel = a.k;
  w.bytes_per_element = a.bytes;
  w.validate();
  const HardwareProfile hw = resolve_profile(a.profile);
  const SweepTable table = sweep(algos, factors, w, hw);

  const std::string csv = sweep_to_csv(table);
  if (a.csv.empty()) out << csv;
  else write_text(a.csv, csv);
  if (!a.svg.empty()) write_text(a.svg, sweep_to_svg(table));
  return kExitOk;
}

// ---- tiling ---------------------------------------------------------------

struct TilingArgs {
  TilingScenario sc;
  std::string algorithm = "revd2";
  std::string csv;
};

int cmd_tiling(const TilingArgs& a, std::ostream& out) {
  const TilingReport rep = analyze(a.sc, parse_tiled_algorithm(a.algorithm));
  out << format_tiling_text(rep);
  if (!a.csv.empty()) {
    write_text(a.csv, std::string(kTilingCsvHeader) + '\n' + format_tiling_csv_row(rep) + '\n');
  }
  return kExitOk;
}

// ---- profiles -------------------------------------------------------------

int cmd_profiles(const std::string& show, std::ostream& out) {
  if (!show.empty()) {
    const HardwareProfile hw = resolve_profile(show);
    out << format_profile(hw) << "# B_tau = " << format_number(hw.time_balance())
        << " MACs/byte\n# B_eps = " << format_number(hw.energy_balance()) << " MACs/byte\n";
    return kExitOk;
  }
  out << "search path:\n";
  for (const auto& dir : profile_search_path()) out << "  " << dir.string() << '\n';
  out << "profiles:\n";
  for (const auto& name : list_profiles()) out << "  " << name << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convolution-based upsampling: equivalence checks, kernel transforms, "
               "inference and cost analysis",
               "upsample"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "upsample 1.0.0");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "randomized equivalence suite");
  verify->add_option("--seed", va.opt.seed, "RNG seed")->capture_default_str();
  verify->add_option("--trials", va.opt.trials, "number of trials")->capture_default_str();
  verify->add_option("--max-extent", va.opt.max_extent, "largest input height/width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--tolerance", va.opt.tolerance, "max-abs error bound")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_flag("--inject-fault", va.opt.inject_fault,
                   "run STRD with unreversed kernels (harness self-test)");
  verify->add_flag("--quiet", va.quiet, "print failing cases only");

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "convert conv kernels to a deconv package");
  transform->add_option("--from", ta.from, "source upsampler")
      ->required()
      ->check(CLI::IsMember({"subpixel", "nn-resize"}));
  transform->add_option("--kernels", ta.kernels, "conv kernel tensor file")->required();
  transform->add_option("--r", ta.r, "upsampling factor")->required()->check(CLI::PositiveNumber);
  transform->add_option("--out", ta.out, "package file to write")->required();

  InferArgs ia;
  auto* infer = app.add_subcommand("infer", "run a deconv package on a tensor file");
  infer->add_option("--input", ia.input, "input tensor file [C, H, W]")->required();
  infer->add_option("--package", ia.package, "kernel package")->required();
  infer->add_option("--variant", ia.variant, "deconvolution formulation")
      ->check(CLI::IsMember({"standard", "revd", "revd2", "strd", "tdc"}))
      ->capture_default_str();
  infer->add_option("--tiles", ia.tiles, "output tile size TxT");
  infer->add_option("--threads", ia.threads, "workers for tiled revd2 (0 = all cores)");
  infer->add_option("--out", ia.out, "output tensor file")->required();

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "cost-model sweep as CSV / SVG");
  analyze_cmd->add_option("--profile", aa.profile, "profile name or file")->capture_default_str();
  analyze_cmd->add_option("--algos", aa.algos, "comma-separated algorithms")->capture_default_str();
  analyze_cmd->add_option("--r-range", aa.r_range, "upsampling factors A..B")->capture_default_str();
  analyze_cmd->add_option("--H", aa.h, "input height/width")->capture_default_str();
  analyze_cmd->add_option("--C", aa.c, "channels")->capture_default_str();
  analyze_cmd->add_option("--K", aa.k, "kernel size")->capture_default_str();
  analyze_cmd->add_option("--bytes", aa.bytes, "bytes per element")->capture_default_str();
  analyze_cmd->add_option("--csv", aa.csv, "CSV output file (default stdout)");
  analyze_cmd->add_option("--svg", aa.svg, "SVG output file");

  TilingArgs tl;
  auto* tiling = app.add_subcommand("tiling", "SIMD tiling load-balance report");
  tiling->add_option("--lanes", tl.sc.lanes, "SIMD lanes")->capture_default_str();
  tiling->add_option("--out-extent", tl.sc.out_extent, "square output extent")->capture_default_str();
  tiling->add_option("--stride", tl.sc.stride, "deconv stride")->capture_default_str();
  tiling->add_option("--tile", tl.sc.tile, "square tile edge")->capture_default_str();
  tiling->add_option("--algorithm", tl.algorithm, "revd2, revd, tdc or strd")
      ->check(CLI::IsMember({"revd2", "revd", "tdc", "strd"}))
      ->capture_default_str();
  tiling->add_option("--csv", tl.csv, "also write a CSV row to this file");

  std::string show;
  auto* profiles = app.add_subcommand("profiles", "list or show hardware profiles");
  profiles->add_option("--show", show, "print one profile and its balance points");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(va, out);
    if (*transform) return cmd_transform(ta, out);
    if (*infer) return cmd_infer(ia, out);
    if (*analyze_cmd) return cmd_analyze(aa, out);
    if (*tiling) return cmd_tiling(tl, out);
    return cmd_profiles(show, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LegalityError& e) {
    err << "legality error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << '\n';
    return kExitData;
  } catch (const ProvenanceError& e) {
    err << "provenance error: " << e.what() << '\n';
    return kExitData;
  } catch (const InvalidKernelError& e) {
    err << "invalid kernel: " << e.what() << '\n';
    return kExitData;
  } catch (const ShapeError& e) {
    err << "shape error: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace upsample
