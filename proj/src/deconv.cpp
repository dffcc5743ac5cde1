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

#include "upsample/deconv.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>
#include <thread>

#include "upsample/error.hpp"
#include "upsample/ops.hpp"

namespace upsample {

using i64 = std::int64_t;

DeconvKernels::DeconvKernels(Tensor weights) : weights_(std::move(weights)) {
  if (weights_.rank() != 4) {
    throw ShapeError("deconv kernels must be rank 4 [I_C, O_C, K, K]");
  }
  if (weights_.extent(2) != weights_.extent(3)) {
    throw ShapeError("deconv kernels must be square");
  }
}

TdcKernels::TdcKernels(Tensor slices, int stride, int source_kernel)
    : slices_(std::move(slices)), stride_(stride), source_kernel_(source_kernel) {
  if (stride_ < 1 || source_kernel_ < 1) {
    throw GeometryError("TDC kernels need S >= 1 and K >= 1");
  }
  if (slices_.rank() != 5) {
    throw ShapeError("TDC kernels must be rank 5 [O_C, I_C, S^2, K_T, K_T]");
  }
  const auto kt = static_cast<std::size_t>(ceil_div(source_kernel_, stride_));
  if (slices_.extent(2) != static_cast<std::size_t>(stride_) * stride_) {
    throw ShapeError("TDC kernels hold " + std::to_string(slices_.extent(2)) +
                     " slices, stride " + std::to_string(stride_) + " needs " +
                     std::to_string(stride_ * stride_));
  }
  if (slices_.extent(3) != kt || slices_.extent(4) != kt) {
    throw ShapeError("TDC slice extent must be ceil(K/S) = " + std::to_string(kt));
  }
}

std::vector<OutputTile> make_tiles(std::size_t out_h, std::size_t out_w, std::size_t tile_h,
                                   std::size_t tile_w) {
  if (tile_h == 0 || tile_w == 0) {
    throw GeometryError("tile extents must be >= 1");
  }
  std::vector<OutputTile> tiles;
  for (std::size_t r = 0; r < out_h; r += tile_h) {
    for (std::size_t c = 0; c < out_w; c += tile_w) {
      tiles.push_back({r, c, std::min(tile_h, out_h - r), std::min(tile_w, out_w - c)});
    }
  }
  return tiles;
}

namespace {

void require_feature_map(const Tensor& input) {
  if (input.rank() != 3) {
    throw ShapeError("deconv input must be rank 3 [C, H, W]");
  }
}

void check_tile(const Tensor& output, const OutputTile& tile) {
  if (output.rank() != 3 || tile.height == 0 || tile.width == 0 ||
      tile.row + tile.height > output.extent(1) || tile.col + tile.width > output.extent(2)) {
    throw GeometryError("tile lies outside the output plane");
  }
}

void check_output(const Tensor& output, const Dims& dims) {
  if (output.dims() != dims) {
    throw ShapeError("output tensor does not have the deconvolution's extents");
  }
}

// Tile edges must sit on multiples of S unless they coincide with the output edge.
void require_stride_aligned(const OutputTile& tile, const Tensor& output, int stride,
                            const char* algo) {
  const auto s = static_cast<std::size_t>(stride);
  const bool rows_ok = tile.row % s == 0 &&
                       (tile.height % s == 0 || tile.row + tile.height == output.extent(1));
  const bool cols_ok = tile.col % s == 0 &&
                       (tile.width % s == 0 || tile.col + tile.width == output.extent(2));
  if (!rows_ok || !cols_ok) {
    throw LegalityError(std::string(algo) + " needs output tiles divisible by the stride S=" +
                        std::to_string(stride));
  }
}

Dims output_dims(const Tensor& input, std::size_t out_channels, const DeconvParams& params) {
  params.validate();
  require_feature_map(input);
  const i64 oh = params.output_extent(static_cast<i64>(input.extent(1)));
  const i64 ow = params.output_extent(static_cast<i64>(input.extent(2)));
  if (oh < 1 || ow < 1) {
    throw GeometryError("deconv output extent S(I-1)+K-2P is not positive");
  }
  return {out_channels, static_cast<std::size_t>(oh), static_cast<std::size_t>(ow)};
}

void revd_region(const Tensor& input, const DeconvKernels& kernels, const DeconvParams& params,
                 const OutputTile& tile, Tensor& output, MacCounter* counter) {
  const i64 s = params.stride;
  const i64 p = params.padding;
  const i64 k = kernels.kernel_size();
  const auto in_c = static_cast<i64>(input.extent(0));
  const auto in_h = static_cast<i64>(input.extent(1));
  const auto in_w = static_cast<i64>(input.extent(2));
  const auto out_c = static_cast<i64>(kernels.out_channels());
  const auto out_w = static_cast<i64>(output.extent(2));
  const i64 row_end = static_cast<i64>(tile.row + tile.height);
  const i64 col_end = static_cast<i64>(tile.col + tile.width);

  // Offset of the single output pixel each tap reaches within an S-block.
  std::vector<i64> off_h(k);
  std::vector<i64> off_w(k);
  for (i64 t = 0; t < k; ++t) {
    off_h[t] = floor_mod(s - floor_mod(p - t, s), s);
    off_w[t] = floor_mod(s - floor_mod(p - t, s), s);
  }

  const float* x = input.data().data();
  const float* w = kernels.tensor().data().data();
  float* y = output.data().data();
  const auto out_h = static_cast<i64>(output.extent(1));
  std::uint64_t trips = 0;

  for (i64 oc = 0; oc < out_c; ++oc) {
    for (i64 bw = static_cast<i64>(tile.col); bw < col_end; bw += s) {
      for (i64 bh = static_cast<i64>(tile.row); bh < row_end; bh += s) {
        for (i64 kh = 0; kh < k; ++kh) {
          const i64 oh = bh + off_h[kh];
          for (i64 kw = 0; kw < k; ++kw) {
            const i64 ow = bw + off_w[kw];
            trips += static_cast<std::uint64_t>(in_c);
            if (oh >= row_end || ow >= col_end) continue;
            const i64 ih = (oh + p - kh) / s;
            const i64 iw = (ow + p - kw) / s;
            if (oh + p - kh < 0 || ow + p - kw < 0 || ih >= in_h || iw >= in_w) continue;
            float& dst = y[(oc * out_h + oh) * out_w + ow];
            for (i64 ic = 0; ic < in_c; ++ic) {
              dst += x[(ic * in_h + ih) * in_w + iw] *
                     w[((ic * out_c + oc) * k + kh) * k + kw];
            }
          }
        }
      }
    }
  }
  if (counter != nullptr) counter->macs += trips;
}

// One output pixel of REVD2; `phase_h`/`phase_w` are mod(o + P, S).
inline float revd2_pixel(const float* x, const float* w, i64 in_c, i64 in_h, i64 in_w,
                         i64 out_c, i64 k, i64 s, i64 p, i64 oc, i64 oh, i64 ow, i64 phase_h,
                         i64 phase_w) {
  float acc = 0.0f;
  for (i64 ic = 0; ic < in_c; ++ic) {
    const float* wk = w + (ic * out_c + oc) * k * k;
    const float* xc = x + ic * in_h * in_w;
    for (i64 kh_base = 0; kh_base < k; kh_base += s) {
      const i64 kh = kh_base + phase_h;
      if (kh >= k) continue;
      const i64 num_h = oh + p - kh;
      if (num_h < 0) continue;
      const i64 ih = num_h / s;
      if (ih >= in_h) continue;
      for (i64 kw_base = 0; kw_base < k; kw_base += s) {
        const i64 kw = kw_base + phase_w;
        if (kw >= k) continue;
        const i64 num_w = ow + p - kw;
        if (num_w < 0) continue;
        const i64 iw = num_w / s;
        if (iw >= in_w) continue;
        acc += xc[ih * in_w + iw] * wk[kh * k + kw];
      }
    }
  }
  return acc;
}

void revd2_region(const Tensor& input, const DeconvKernels& kernels, const DeconvParams& params,
                  const OutputTile& tile, Tensor& output, Revd2Indexing indexing) {
  const i64 s = params.stride;
  const i64 p = params.padding;
  const i64 k = kernels.kernel_size();
  const auto in_c = static_cast<i64>(input.extent(0));
  const auto in_h = static_cast<i64>(input.extent(1));
  const auto in_w = static_cast<i64>(input.extent(2));
  const auto out_c = static_cast<i64>(kernels.out_channels());
  const auto out_h = static_cast<i64>(output.extent(1));
  const auto out_w = static_cast<i64>(output.extent(2));
  const float* x = input.data().data();
  const float* w = kernels.tensor().data().data();
  float* y = output.data().data();
  const auto row0 = static_cast<i64>(tile.row);
  const auto col0 = static_cast<i64>(tile.col);
  const auto rows = static_cast<i64>(tile.height);
  const auto cols = static_cast<i64>(tile.width);

  for (i64 oc = 0; oc < out_c; ++oc) {
    if (indexing == Revd2Indexing::kModulo) {
      for (i64 oh = row0; oh < row0 + rows; ++oh) {
        for (i64 ow = col0; ow < col0 + cols; ++ow) {
          y[(oc * out_h + oh) * out_w + ow] =
              revd2_pixel(x, w, in_c, in_h, in_w, out_c, k, s, p, oc, oh, ow,
                          floor_mod(oh + p, s), floor_mod(ow + p, s));
        }
      }
    } else {
      i64 jh = floor_mod(row0 + p, s);
      for (i64 oh = row0; oh < row0 + rows; ++oh) {
        i64 jw = floor_mod(col0 + p, s);
        for (i64 ow = col0; ow < col0 + cols; ++ow) {
          y[(oc * out_h + oh) * out_w + ow] =
              revd2_pixel(x, w, in_c, in_h, in_w, out_c, k, s, p, oc, oh, ow, jh, jw);
          if (++jw >= s) jw = 0;
        }
        if (++jh >= s) jh = 0;
      }
    }
  }
}

void tdc_region(const Tensor& input, const TdcKernels& kernels, const DeconvParams& params,
                const OutputTile& tile, Tensor& output, MacCounter* counter) {
  const i64 s = params.stride;
  const i64 p = params.padding;
  const i64 kt = kernels.slice_size();
  const i64 slices = s * s;
  const auto in_c = static_cast<i64>(input.extent(0));
  const auto in_h = static_cast<i64>(input.extent(1));
  const auto in_w = static_cast<i64>(input.extent(2));
  const auto out_c = static_cast<i64>(kernels.out_channels());
  const auto out_h = static_cast<i64>(output.extent(1));
  const auto out_w = static_cast<i64>(output.extent(2));
  const float* x = input.data().data();
  const float* w = kernels.tensor().data().data();
  float* y = output.data().data();
  const auto row0 = static_cast<i64>(tile.row);
  const auto col0 = static_cast<i64>(tile.col);
  const i64 row_end = row0 + static_cast<i64>(tile.height);
  const i64 col_end = col0 + static_cast<i64>(tile.width);
  std::uint64_t trips = 0;

  for (i64 oc = 0; oc < out_c; ++oc) {
    for (i64 ph = 0; ph < s; ++ph) {
      for (i64 pw = 0; pw < s; ++pw) {
        const i64 n = s * ph + pw;
        // First row / column of this phase inside the tile.
        const i64 first_h = row0 + floor_mod(ph - p - row0, s);
        const i64 first_w = col0 + floor_mod(pw - p - col0, s);
        for (i64 oh = first_h; oh < row_end; oh += s) {
          const i64 qh = (oh + p - ph) / s - (kt - 1);
          for (i64 ow = first_w; ow < col_end; ow += s) {
            const i64 qw = (ow + p - pw) / s - (kt - 1);
            float acc = 0.0f;
            for (i64 ic = 0; ic < in_c; ++ic) {
              const float* wk = w + ((oc * in_c + ic) * slices + n) * kt * kt;
              const float* xc = x + ic * in_h * in_w;
              for (i64 a = 0; a < kt; ++a) {
                const i64 ih = qh + a;
                if (ih < 0 || ih >= in_h) continue;
                for (i64 b = 0; b < kt; ++b) {
                  const i64 iw = qw + b;
                  if (iw < 0 || iw >= in_w) continue;
                  acc += xc[ih * in_w + iw] * wk[a * kt + b];
                }
              }
            }
            trips += static_cast<std::uint64_t>(in_c * kt * kt);
            y[(oc * out_h + oh) * out_w + ow] = acc;
          }
        }
      }
    }
  }
  if (counter != nullptr) counter->macs += trips;
}

void check_tdc(const Tensor& input, const TdcKernels& kernels, const DeconvParams& params) {
  if (kernels.slice_count() != static_cast<std::size_t>(params.stride) * params.stride ||
      kernels.stride() != params.stride) {
    throw ShapeError("TDC kernels were sliced for stride " + std::to_string(kernels.stride()) +
                     ", deconv stride is " + std::to_string(params.stride));
  }
  if (kernels.source_kernel() != params.kernel) {
    throw ShapeError("TDC kernels were sliced from K=" + std::to_string(kernels.source_kernel()) +
                     ", deconv params say K=" + std::to_string(params.kernel));
  }
  if (kernels.in_channels() != input.extent(0)) {
    throw ShapeError("TDC kernels expect " + std::to_string(kernels.in_channels()) +
                     " input channels, input has " + std::to_string(input.extent(0)));
  }
}

}  // namespace

Dims deconv_output_dims(const Tensor& input, const DeconvKernels& kernels,
                        const DeconvParams& params) {
  require_feature_map(input);
  if (kernels.in_channels() != input.extent(0)) {
    throw ShapeError("deconv kernels expect " + std::to_string(kernels.in_channels()) +
                     " input channels, input has " + std::to_string(input.extent(0)));
  }
  if (kernels.kernel_size() != params.kernel) {
    throw ShapeError("deconv kernel extent " + std::to_string(kernels.kernel_size()) +
                     " does not match K=" + std::to_string(params.kernel));
  }
  return output_dims(input, kernels.out_channels(), params);
}

Tensor deconv_standard(const Tensor& input, const DeconvKernels& kernels,
                       const DeconvParams& params, MacCounter* counter) {
  Tensor out(deconv_output_dims(input, kernels, params));
  const i64 s = params.stride;
  const i64 p = params.padding;
  const i64 k = kernels.kernel_size();
  const auto in_c = static_cast<i64>(input.extent(0));
  const auto in_h = static_cast<i64>(input.extent(1));
  const auto in_w = static_cast<i64>(input.extent(2));
  const auto out_c = static_cast<i64>(out.extent(0));
  const auto out_h = static_cast<i64>(out.extent(1));
  const auto out_w = static_cast<i64>(out.extent(2));
  const float* x = input.data().data();
  const float* w = kernels.tensor().data().data();
  float* y = out.data().data();

  for (i64 oc = 0; oc < out_c; ++oc) {
    for (i64 iw = 0; iw < in_w; ++iw) {
      for (i64 ih = 0; ih < in_h; ++ih) {
        for (i64 ic = 0; ic < in_c; ++ic) {
          const float xv = x[(ic * in_h + ih) * in_w + iw];
          const float* wk = w + (ic * out_c + oc) * k * k;
          for (i64 kh = 0; kh < k; ++kh) {
            const i64 oh = s * ih + kh - p;
            if (oh < 0 || oh >= out_h) continue;
            for (i64 kw = 0; kw < k; ++kw) {
              const i64 ow = s * iw + kw - p;
              if (ow < 0 || ow >= out_w) continue;
              y[(oc * out_h + oh) * out_w + ow] += xv * wk[kh * k + kw];
            }
          }
        }
      }
    }
  }
  if (counter != nullptr) {
    counter->macs +=
        static_cast<std::uint64_t>(out_c * in_w * in_h * in_c) * static_cast<std::uint64_t>(k * k);
  }
  return out;
}

Tensor deconv_revd(const Tensor& input, const DeconvKernels& kernels, const DeconvParams& params,
                   MacCounter* counter) {
  Tensor out(deconv_output_dims(input, kernels, params));
  revd_region(input, kernels, params, {0, 0, out.extent(1), out.extent(2)}, out, counter);
  return out;
}

void deconv_revd_tile(const Tensor& input, const DeconvKernels& kernels,
                      const DeconvParams& params, const OutputTile& tile, Tensor& output) {
  check_output(output, deconv_output_dims(input, kernels, params));
  check_tile(output, tile);
  require_stride_aligned(tile, output, params.stride, "REVD");
  // Contributions accumulate, so the tile is cleared first.
  for (std::size_t c = 0; c < output.extent(0); ++c) {
    for (std::size_t h = tile.row; h < tile.row + tile.height; ++h) {
      std::fill_n(&output(c, h, tile.col), tile.width, 0.0f);
    }
  }
  revd_region(input, kernels, params, tile, output, nullptr);
}

Tensor deconv_revd2(const Tensor& input, const DeconvKernels& kernels, const DeconvParams& params,
                    Revd2Indexing indexing, MacCounter* counter) {
  Tensor out(deconv_output_dims(input, kernels, params));
  revd2_region(input, kernels, params, {0, 0, out.extent(1), out.extent(2)}, out, indexing);
  if (counter != nullptr) {
    const auto k = static_cast<std::uint64_t>(kernels.kernel_size());
    const auto taps = static_cast<std::uint64_t>(ceil_div(static_cast<i64>(k), params.stride));
    counter->macs += static_cast<std::uint64_t>(out.size()) * input.extent(0) * taps * taps;
  }
  return out;
}

void deconv_revd2_tile(const Tensor& input, const DeconvKernels& kernels,
                       const DeconvParams& params, const OutputTile& tile, Tensor& output,
                       Revd2Indexing indexing) {
  check_output(output, deconv_output_dims(input, kernels, params));
  check_tile(output, tile);
  revd2_region(input, kernels, params, tile, output, indexing);
}

Tensor deconv_revd2_tiled(const Tensor& input, const DeconvKernels& kernels,
                          const DeconvParams& params, std::span<const OutputTile> tiles,
                          unsigned threads) {
  Tensor out(deconv_output_dims(input, kernels, params));
  for (const auto& t : tiles) check_tile(out, t);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tiles.size())));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tiles.size(); i = next++) {
      revd2_region(input, kernels, params, tiles[i], out, Revd2Indexing::kModulo);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return out;
}

Tensor zero_insert(const Tensor& input, int stride) {
  require_feature_map(input);
  if (stride < 1) throw GeometryError("zero_insert: stride must be >= 1");
  const auto s = static_cast<std::size_t>(stride);
  const std::size_t c = input.extent(0);
  const std::size_t h = input.extent(1);
  const std::size_t w = input.extent(2);
  Tensor out({c, s * (h - 1) + 1, s * (w - 1) + 1});
  for (std::size_t ch = 0; ch < c; ++ch) {
    for (std::size_t ih = 0; ih < h; ++ih) {
      for (std::size_t iw = 0; iw < w; ++iw) {
        out(ch, s * ih, s * iw) = input(ch, ih, iw);
      }
    }
  }
  return out;
}

Tensor reverse_kernels(const DeconvKernels& kernels) {
  const std::size_t in_c = kernels.in_channels();
  const std::size_t out_c = kernels.out_channels();
  const auto k = static_cast<std::size_t>(kernels.kernel_size());
  const Tensor& w = kernels.tensor();
  Tensor out({out_c, in_c, k, k});
  for (std::size_t oc = 0; oc < out_c; ++oc) {
    for (std::size_t ic = 0; ic < in_c; ++ic) {
      for (std::size_t kh = 0; kh < k; ++kh) {
        for (std::size_t kw = 0; kw < k; ++kw) {
          out(oc, ic, kh, kw) = w(ic, oc, k - 1 - kh, k - 1 - kw);
        }
      }
    }
  }
  return out;
}

namespace detail {

Tensor deconv_strd_impl(const Tensor& input, const DeconvKernels& kernels,
                        const DeconvParams& params, bool reverse, MacCounter* counter,
                        Tensor* zero_inserted) {
  const Dims dims = deconv_output_dims(input, kernels, params);
  Tensor sparse = zero_insert(input, params.stride);
  Tensor conv_kernels;
  if (reverse) {
    conv_kernels = reverse_kernels(kernels);
  } else {
    const auto k = static_cast<std::size_t>(kernels.kernel_size());
    conv_kernels = Tensor({kernels.out_channels(), kernels.in_channels(), k, k});
    for (std::size_t oc = 0; oc < kernels.out_channels(); ++oc)
      for (std::size_t ic = 0; ic < kernels.in_channels(); ++ic)
        for (std::size_t kh = 0; kh < k; ++kh)
          for (std::size_t kw = 0; kw < k; ++kw)
            conv_kernels(oc, ic, kh, kw) = kernels.tensor()(ic, oc, kh, kw);
  }
  Tensor out = conv2d_signed_padding(sparse, conv_kernels, 1,
                                     params.kernel - 1 - params.padding, counter);
  if (out.dims() != dims) {
    throw GeometryError("STRD convolution produced unexpected extents");
  }
  if (zero_inserted != nullptr) *zero_inserted = std::move(sparse);
  return out;
}

}  // namespace detail

Tensor deconv_strd(const Tensor& input, const DeconvKernels& kernels, const DeconvParams& params,
                   MacCounter* counter, Tensor* zero_inserted) {
  return detail::deconv_strd_impl(input, kernels, params, true, counter, zero_inserted);
}

Tensor deconv_tdc(const Tensor& input, const TdcKernels& kernels, const DeconvParams& params,
                  MacCounter* counter) {
  check_tdc(input, kernels, params);
  Tensor out(output_dims(input, kernels.out_channels(), params));
  tdc_region(input, kernels, params, {0, 0, out.extent(1), out.extent(2)}, out, counter);
  return out;
}

void deconv_tdc_tile(const Tensor& input, const TdcKernels& kernels, const DeconvParams& params,
                     const OutputTile& tile, Tensor& output) {
  check_tdc(input, kernels, params);
  check_output(output, output_dims(input, kernels.out_channels(), params));
  check_tile(output, tile);
  require_stride_aligned(tile, output, params.stride, "TDC");
  tdc_region(input, kernels, params, tile, output, nullptr);
}

}  // namespace upsample
