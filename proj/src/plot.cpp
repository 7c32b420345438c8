// Copyright 2026 The momint authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "momint/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace momint {

namespace {

constexpr double kW = 720, kH = 480;           // canvas
constexpr double kML = 80, kMR = 24, kMT = 24, kMB = 56;  // margins
constexpr std::size_t kMaxPointsPerSeries = 2000;
constexpr double kClip = 1e-300;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Series {
  std::string label;
  std::vector<double> x, y;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Linear "nice" tick positions covering [lo, hi] with ~5 steps.
std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * span;
       t += step) {
    ticks.push_back(t);
  }
  return ticks;
}

// Decade positions (as exponents) covering [lo, hi] in log10 space.
std::vector<double> decade_ticks(double lo, double hi) {
  std::vector<double> ticks;
  for (double e = std::ceil(lo); e <= std::floor(hi) + 1e-12; e += 1.0) {
    ticks.push_back(e);
  }
  if (ticks.empty()) {
    ticks.push_back(lo);
    ticks.push_back(hi);
  }
  return ticks;
}

struct Frame {
  double xmin, xmax, ymin, ymax;
  double px(double x) const {
    return kML + (x - xmin) / (xmax - xmin) * (kW - kML - kMR);
  }
  double py(double y) const {
    return kH - kMB - (y - ymin) / (ymax - ymin) * (kH - kMT - kMB);
  }
};

void pad_degenerate(double* lo, double* hi) {
  if (*hi - *lo < 1e-12) {
    *lo -= 0.5;
    *hi += 0.5;
  }
}

std::string svg_header() {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n"
                "<rect width=\"%.0f\" height=\"%.0f\" fill=\"white\"/>\n",
                kW, kH, kW, kH, kW, kH);
  return buf;
}

void draw_frame_and_ticks(std::string* svg, const Frame& fr,
                          const std::vector<double>& xticks,
                          const std::vector<double>& yticks, bool log_labels,
                          const std::string& xlabel,
                          const std::string& ylabel) {
  char buf[512];
  // grid + tick labels
  for (double t : xticks) {
    const double x = fr.px(t);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#dddddd\"/>\n",
                  x, fr.py(fr.ymin), x, fr.py(fr.ymax));
    *svg += buf;
    const std::string lab = log_labels ? "1e" + fmt(t) : fmt(t);
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" "
                  "font-size=\"12\" text-anchor=\"middle\">%s</text>\n",
                  x, kH - kMB + 18, lab.c_str());
    *svg += buf;
  }
  for (double t : yticks) {
    const double y = fr.py(t);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#dddddd\"/>\n",
                  fr.px(fr.xmin), y, fr.px(fr.xmax), y);
    *svg += buf;
    const std::string lab = log_labels ? "1e" + fmt(t) : fmt(t);
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" "
                  "font-size=\"12\" text-anchor=\"end\">%s</text>\n",
                  kML - 8, y + 4, lab.c_str());
    *svg += buf;
  }
  // axes box
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                kML, kMT, kW - kML - kMR, kH - kMT - kMB);
  *svg += buf;
  // axis titles
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" "
                "font-size=\"13\" text-anchor=\"middle\">%s</text>\n",
                kML + (kW - kML - kMR) / 2, kH - 12, escape(xlabel).c_str());
  *svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" "
                "font-size=\"13\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 18 %.1f)\">%s</text>\n",
                18.0, kMT + (kH - kMT - kMB) / 2, kMT + (kH - kMT - kMB) / 2,
                escape(ylabel).c_str());
  *svg += buf;
}

void draw_series(std::string* svg, const Frame& fr,
                 const std::vector<Series>& series) {
  char buf[256];
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
    std::string pts;
    const std::size_t n = series[s].x.size();
    const std::size_t step =
        n > kMaxPointsPerSeries ? (n + kMaxPointsPerSeries - 1) /
                                      kMaxPointsPerSeries
                                : 1;
    for (std::size_t i = 0; i < n; i += step) {
      std::snprintf(buf, sizeof buf, "%.1f,%.1f ", fr.px(series[s].x[i]),
                    fr.py(series[s].y[i]));
      pts += buf;
    }
    if (step > 1 && n > 0) {  // keep the endpoint
      std::snprintf(buf, sizeof buf, "%.1f,%.1f ", fr.px(series[s].x[n - 1]),
                    fr.py(series[s].y[n - 1]));
      pts += buf;
    }
    *svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
            "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    // legend entry
    const double ly = kMT + 16 + 18 * s;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"%s\" stroke-width=\"2\"/>\n",
                  kW - kMR - 180, ly, kW - kMR - 150, ly, color);
    *svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" "
                  "font-size=\"12\">%s</text>\n",
                  kW - kMR - 144, ly + 4, escape(series[s].label).c_str());
    *svg += buf;
  }
}

// First exact global minimum value recorded for the configured objective.
std::optional<double> exact_global_value(const ExperimentConfig& cfg) {
  try {
    const Objective obj = make_objective(cfg.objective);
    for (const auto& m : obj.minima) {
      if (m.kind == MinimumKind::global && !m.approximate &&
          m.value.has_value()) {
        return m.value;
      }
    }
  } catch (const std::exception&) {
    // fall through: plot raw f
  }
  return std::nullopt;
}

}  // namespace

std::string render_plot(const RunRecord& rec, PlotKind kind,
                        const std::string& path) {
  std::vector<Series> series;
  long clipped = 0;
  std::string ylabel, xlabel;

  if (kind == PlotKind::fvals_loglog) {
    const std::optional<double> fstar = exact_global_value(rec.config);
    xlabel = "k";
    ylabel = fstar.has_value() ? "f(x_k) - f*" : "f(x_k)";
    for (const auto& res : rec.results) {
      if (!res.error.empty()) continue;
      Series s;
      s.label = res.label;
      for (const auto& r : res.trajectory.records) {
        if (r.k < 1) continue;
        double v = r.fval - fstar.value_or(0.0);
        if (!std::isfinite(v)) continue;
        if (v <= 0.0) {
          v = kClip;
          ++clipped;
        }
        s.x.push_back(std::log10(static_cast<double>(r.k)));
        s.y.push_back(std::log10(v));
      }
      if (!s.x.empty()) series.push_back(std::move(s));
    }
  } else {
    xlabel = "x1";
    ylabel = "x2";
    for (const auto& res : rec.results) {
      if (!res.error.empty()) continue;
      Series s;
      s.label = res.label;
      for (const auto& r : res.trajectory.records) {
        if (r.x.size() != 2) {
          throw std::domain_error(
              "render_plot: trajectory_2d needs a 2-dimensional objective");
        }
        if (!r.x.allFinite()) continue;
        s.x.push_back(r.x[0]);
        s.y.push_back(r.x[1]);
      }
      if (!s.x.empty()) series.push_back(std::move(s));
    }
  }

  Frame fr{0.0, 1.0, 0.0, 1.0};
  if (!series.empty()) {
    fr.xmin = fr.ymin = std::numeric_limits<double>::infinity();
    fr.xmax = fr.ymax = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
      for (double v : s.x) {
        fr.xmin = std::min(fr.xmin, v);
        fr.xmax = std::max(fr.xmax, v);
      }
      for (double v : s.y) {
        fr.ymin = std::min(fr.ymin, v);
        fr.ymax = std::max(fr.ymax, v);
      }
    }
  }
  pad_degenerate(&fr.xmin, &fr.xmax);
  pad_degenerate(&fr.ymin, &fr.ymax);

  std::string svg = svg_header();
  if (clipped > 0) {
    std::fprintf(stderr,
                 "render_plot: warning: %ld nonpositive values clipped to "
                 "%.0e for the log plot\n",
                 clipped, kClip);
    svg += "<!-- warning: " + std::to_string(clipped) +
           " nonpositive values clipped to 1e-300 -->\n";
  }
  const bool log_axes = kind == PlotKind::fvals_loglog;
  const auto xticks = log_axes ? decade_ticks(fr.xmin, fr.xmax)
                               : linear_ticks(fr.xmin, fr.xmax);
  const auto yticks = log_axes ? decade_ticks(fr.ymin, fr.ymax)
                               : linear_ticks(fr.ymin, fr.ymax);
  draw_frame_and_ticks(&svg, fr, xticks, yticks, log_axes, xlabel, ylabel);
  if (series.empty()) {
    svg += "<text x=\"" + fmt(kW / 2) + "\" y=\"" + fmt(kH / 2) +
           "\" font-family=\"monospace\" font-size=\"14\" "
           "text-anchor=\"middle\">no data</text>\n";
  } else {
    draw_series(&svg, fr, series);
  }
  svg += "</svg>\n";

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("render_plot: cannot open " + path);
  }
  out << svg;
  if (!out) {
    throw std::runtime_error("render_plot: write failed for " + path);
  }
  return path;
}

}  // namespace momint
