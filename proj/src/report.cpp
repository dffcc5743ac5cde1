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

#include "upsample/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

namespace upsample {

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string sweep_to_csv(const SweepTable& t) {
  std::ostringstream out;
  out << "# baseline: " << t.baseline << '\n'
      << "# profile: " << t.profile << '\n'
      << "# workload: H=" << t.workload.height << " C=" << t.workload.channels
      << " K=" << t.workload.kernel << " bytes_per_element=" << t.workload.bytes_per_element
      << '\n'
      << kSweepCsvHeader << '\n';
  for (const SweepRow& row : t.rows) {
    const CostReport& c = row.report;
    const auto bytes = c.req.bytes_per_element;
    out << to_string(c.algorithm) << ',' << c.factor << ',' << c.req.macs << ','
        << c.req.weight_elems * bytes << ',' << c.req.activation_elems * bytes << ','
        << format_number(c.time.seconds) << ',' << format_number(c.energy.joules) << ','
        << format_number(c.arithmetic_intensity) << ',' << format_number(c.activation_reuse)
        << ',' << format_number(c.energy_per_pixel) << ',' << format_number(c.perf_per_energy)
        << ',' << format_number(row.time_normalized) << ','
        << format_number(row.energy_normalized) << ',' << to_string(c.roofline.time.bound)
        << ',' << to_string(c.roofline.energy.bound) << '\n';
  }
  return out.str();
}

namespace {

constexpr double kPanelW = 320;
constexpr double kPanelH = 280;
constexpr double kLeft = 56;
constexpr double kRight = 12;
constexpr double kTop = 28;
constexpr double kBottom = 40;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string f3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  return s == "-0.000" ? "0.000" : s;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Axis {
  double lo, hi;
  bool log;
  double map(double v, double px_lo, double px_hi) const {
    const double a = log ? std::log10(v) : v;
    const double l = log ? std::log10(lo) : lo;
    const double h = log ? std::log10(hi) : hi;
    const double t = h > l ? (a - l) / (h - l) : 0.5;
    return px_lo + t * (px_hi - px_lo);
  }
};

class Panel {
 public:
  Panel(std::ostringstream& out, double x0, Axis x, Axis y) : out_(out), x0_(x0), x_(x), y_(y) {}

  double px(double v) const { return x_.map(v, x0_ + kLeft, x0_ + kPanelW - kRight); }
  double py(double v) const { return y_.map(v, kTop + kPanelH - kBottom, kTop); }

  void frame(std::string_view title, std::string_view xlabel, std::string_view ylabel) {
    const double l = x0_ + kLeft, r = x0_ + kPanelW - kRight;
    const double t = kTop, b = kTop + kPanelH - kBottom;
    out_ << "<rect x=\"" << f3(l) << "\" y=\"" << f3(t) << "\" width=\"" << f3(r - l)
         << "\" height=\"" << f3(b - t) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    text(x0_ + kPanelW / 2, 18, title, "middle");
    text(x0_ + kPanelW / 2, b + 32, xlabel, "middle");
    out_ << "<text x=\"" << f3(x0_ + 14) << "\" y=\"" << f3((t + b) / 2)
         << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << f3(x0_ + 14) << ' '
         << f3((t + b) / 2) << ")\">" << escape(ylabel) << "</text>\n";
    tick_labels(l, r, t, b);
  }

  void text(double x, double y, std::string_view s, std::string_view anchor) {
    out_ << "<text x=\"" << f3(x) << "\" y=\"" << f3(y) << "\" text-anchor=\"" << anchor
         << "\">" << escape(s) << "</text>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view color,
                std::string_view dash = "") {
    out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << "\"";
    out_ << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out_ << (i ? " " : "") << f3(px(pts[i].first)) << ',' << f3(py(pts[i].second));
    }
    out_ << "\"/>\n";
  }

  void marker(double x, double y, std::string_view color, bool square) {
    if (square) {
      out_ << "<rect x=\"" << f3(px(x) - 3) << "\" y=\"" << f3(py(y) - 3)
           << "\" width=\"6.000\" height=\"6.000\" fill=\"" << color << "\"/>\n";
    } else {
      out_ << "<circle cx=\"" << f3(px(x)) << "\" cy=\"" << f3(py(y)) << "\" r=\"3.000\" fill=\""
           << color << "\"/>\n";
    }
  }

 private:
  void tick_labels(double l, double r, double t, double b) {
    auto label = [](const Axis& a, double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, a.log ? "%.3g" : "%.2f", v);
      return std::string(buf);
    };
    text(l, b + 14, label(x_, x_.lo), "start");
    text(r, b + 14, label(x_, x_.hi), "end");
    text(l - 4, b, label(y_, y_.lo), "end");
    text(l - 4, t + 10, label(y_, y_.hi), "end");
  }

  std::ostringstream& out_;
  double x0_;
  Axis x_, y_;
};

}  // namespace

std::string sweep_to_svg(const SweepTable& t) {
  // Group rows by algorithm, keeping first-seen order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const SweepRow*>> series;
  double r_lo = 1e300, r_hi = 0, tn_hi = 0, en_hi = 0;
  double x_lo = 1e300, x_hi = 0;
  double bal_t = 1, bal_e = 1;
  for (const SweepRow& row : t.rows) {
    const std::string name = to_string(row.report.algorithm);
    if (!series.count(name)) order.push_back(name);
    series[name].push_back(&row);
    const double r = static_cast<double>(row.report.factor);
    r_lo = std::min(r_lo, r);
    r_hi = std::max(r_hi, r);
    tn_hi = std::max(tn_hi, row.time_normalized);
    en_hi = std::max(en_hi, row.energy_normalized);
    const auto& rl = row.report.roofline;
    bal_t = rl.time.balance;
    bal_e = rl.energy.balance;
    for (double x : {rl.time.reuse, rl.energy.reuse, rl.time.balance, rl.energy.balance}) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
  }
  if (t.rows.empty()) r_lo = r_hi = 1, x_lo = 1, x_hi = 10;
  x_lo = std::pow(10.0, std::floor(std::log10(x_lo)));
  x_hi = std::pow(10.0, std::ceil(std::log10(x_hi)));
  if (x_hi <= x_lo) x_hi = x_lo * 10;

  const double legend_h = 18.0 * static_cast<double>(order.size()) + 10;
  const double width = 3 * kPanelW;
  const double height = kTop + kPanelH + legend_h;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f3(width) << "\" height=\""
      << f3(height) << "\" viewBox=\"0 0 " << f3(width) << ' ' << f3(height)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  Panel pt(out, 0, {r_lo, r_hi, false}, {0, std::max(1.0, tn_hi * 1.05), false});
  pt.frame("Normalized time", "upsampling factor r", "T / T(" + t.baseline + ")");
  Panel pe(out, kPanelW, {r_lo, r_hi, false}, {0, std::max(1.0, en_hi * 1.05), false});
  pe.frame("Normalized energy", "upsampling factor r", "E / E(" + t.baseline + ")");
  Panel pr(out, 2 * kPanelW, {x_lo, x_hi, true}, {0, 1.05, false});
  pr.frame("Roofline", "MACs per byte", "attainable fraction of peak");

  // Roofs, sampled on the log axis.
  for (const auto& [balance, dash] : {std::pair{bal_t, ""}, std::pair{bal_e, "4 3"}}) {
    std::vector<std::pair<double, double>> roof;
    constexpr int kSamples = 48;
    for (int i = 0; i <= kSamples; ++i) {
      const double x =
          x_lo * std::pow(x_hi / x_lo, static_cast<double>(i) / static_cast<double>(kSamples));
      roof.emplace_back(x, roofline_attainable(x, balance));
    }
    pr.polyline(roof, "#999", dash);
  }

  for (std::size_t i = 0; i < order.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    std::vector<std::pair<double, double>> tl, el;
    for (const SweepRow* row : series[order[i]]) {
      const double r = static_cast<double>(row->report.factor);
      tl.emplace_back(r, row->time_normalized);
      el.emplace_back(r, row->energy_normalized);
      pt.marker(r, row->time_normalized, color, false);
      pe.marker(r, row->energy_normalized, color, false);
      const auto& rl = row->report.roofline;
      pr.marker(rl.time.reuse, rl.time.attainable, color, false);
      pr.marker(rl.energy.reuse, rl.energy.attainable, color, true);
    }
    pt.polyline(tl, color);
    pe.polyline(el, color);

    const double ly = kTop + kPanelH + 14 + 18.0 * static_cast<double>(i);
    out << "<rect x=\"" << f3(kLeft) << "\" y=\"" << f3(ly - 8) << "\" width=\"10.000\" "
        << "height=\"10.000\" fill=\"" << color << "\"/>\n"
        << "<text x=\"" << f3(kLeft + 16) << "\" y=\"" << f3(ly) << "\">" << escape(order[i])
        << "</text>\n";
  }
  out << "<text x=\"" << f3(2 * kPanelW + kLeft) << "\" y=\"" << f3(kTop + kPanelH + 14)
      << "\">circles: time (AI vs B_tau), squares: energy (reuse vs B_eps)</text>\n"
      << "<text x=\"" << f3(2 * kPanelW + kLeft) << "\" y=\"" << f3(kTop + kPanelH + 32)
      << "\">profile: " << escape(t.profile) << "</text>\n"
      << "</svg>\n";
  return out.str();
}

}  // namespace upsample
