// Copyright 2026 The qdo Authors
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

#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qdo::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;  // data ranges
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void pad_range(double& lo, double& hi) {
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    const double mid = 0.5 * (lo + hi);
    lo = mid - 0.5;
    hi = mid + 0.5;
  }
}

std::string header(const std::string& title) {
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                  num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">" + escape(title) + "</text>\n";
  return s;
}

std::string axes(const Frame& f, const std::string& x_label, const std::string& y_label) {
  std::string s;
  const double left = kLeft, right = kWidth - kRight, top = kTop, bottom = kHeight - kBottom;
  s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) + "\" height=\"" +
       num(bottom - top) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
    s += "<line x1=\"" + num(f.px(xv)) + "\" y1=\"" + num(bottom) + "\" x2=\"" + num(f.px(xv)) + "\" y2=\"" +
         num(bottom + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(f.px(xv)) + "\" y=\"" + num(bottom + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(xv) + "</text>\n";
    s += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(f.py(yv)) + "\" x2=\"" + num(left) + "\" y2=\"" +
         num(f.py(yv)) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(left - 8) + "\" y=\"" + num(f.py(yv) + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(yv) + "</text>\n";
  }
  s += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(kHeight - 12) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(x_label) + "</text>\n";
  s += "<text x=\"16\" y=\"" + num((top + bottom) / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\" transform=\"rotate(-90 16 " + num((top + bottom) / 2) + ")\">" + escape(y_label) +
       "</text>\n";
  return s;
}

// Sequential palette: white -> dark blue.  Diverging: blue -> white -> red.
std::string colour(double t, bool diverging) {
  t = std::clamp(t, 0.0, 1.0);
  int r, g, b;
  if (diverging) {
    if (t < 0.5) {
      const double u = t / 0.5;
      r = static_cast<int>(std::lround(33 + u * (255 - 33)));
      g = static_cast<int>(std::lround(102 + u * (255 - 102)));
      b = static_cast<int>(std::lround(172 + u * (255 - 172)));
    } else {
      const double u = (t - 0.5) / 0.5;
      r = static_cast<int>(std::lround(255 + u * (178 - 255)));
      g = static_cast<int>(std::lround(255 + u * (24 - 255)));
      b = static_cast<int>(std::lround(255 + u * (43 - 255)));
    }
  } else {
    r = static_cast<int>(std::lround(255 + t * (8 - 255)));
    g = static_cast<int>(std::lround(255 + t * (48 - 255)));
    b = static_cast<int>(std::lround(255 + t * (107 - 255)));
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  pad_range(x0, x1);
  pad_range(y0, y1);
  const double margin = 0.05 * (y1 - y0);
  const Frame f{x0, x1, y0 - margin, y1 + margin};

  std::string out = header(title) + axes(f, x_label, y_label);
  int legend_row = 0;
  for (const auto& s : series) {
    const std::string style = "fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.8\"" +
                              (s.dashed ? " stroke-dasharray=\"6 4\"" : "");
    std::string points;
    auto flush = [&]() {
      if (!points.empty()) out += "<polyline " + style + " points=\"" + points + "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += num(f.px(s.x[i])) + "," + num(f.py(s.y[i]));
      if (s.markers) {
        out += "<circle cx=\"" + num(f.px(s.x[i])) + "\" cy=\"" + num(f.py(s.y[i])) + "\" r=\"2.5\" fill=\"" +
               s.color + "\"/>\n";
      }
    }
    flush();
    const double ly = kTop + 14 + 18 * legend_row++;
    const double lx = kWidth - kRight + 12;
    out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 22) + "\" y2=\"" +
           num(ly - 4) + "\" " + style + "/>\n";
    out += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(ly) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string heat_map(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const RMatrix& field, Axis x, Axis y, int max_cells) {
  const Frame f{x.min, x.max, y.min, y.max};
  std::string out = header(title);
  const auto nx = field.rows(), ny = field.cols();
  if (nx > 0 && ny > 0) {
    const Eigen::Index bx = (nx + max_cells - 1) / max_cells;
    const Eigen::Index by = (ny + max_cells - 1) / max_cells;
    const Eigen::Index cx = (nx + bx - 1) / bx, cy = (ny + by - 1) / by;
    RMatrix cells(cx, cy);
    for (Eigen::Index i = 0; i < cx; ++i) {
      for (Eigen::Index j = 0; j < cy; ++j) {
        const Eigen::Index rows = std::min(bx, nx - i * bx), cols = std::min(by, ny - j * by);
        cells(i, j) = field.block(i * bx, j * by, rows, cols).mean();
      }
    }
    const double lo = cells.minCoeff(), hi = cells.maxCoeff();
    const bool diverging = lo < 0.0 && hi > 0.0;
    const double scale = diverging ? std::max(-lo, hi) : (hi - lo > 0.0 ? hi - lo : 1.0);
    const double w = (f.px(x.max) - f.px(x.min)) / static_cast<double>(cx);
    const double h = (f.py(y.min) - f.py(y.max)) / static_cast<double>(cy);
    for (Eigen::Index i = 0; i < cx; ++i) {
      for (Eigen::Index j = 0; j < cy; ++j) {
        const double t = diverging ? 0.5 + 0.5 * cells(i, j) / scale : (cells(i, j) - lo) / scale;
        out += "<rect x=\"" + num(f.px(x.min) + w * i) + "\" y=\"" + num(f.py(y.min) - h * (j + 1)) +
               "\" width=\"" + num(w + 0.05) + "\" height=\"" + num(h + 0.05) + "\" fill=\"" +
               colour(t, diverging) + "\"/>\n";
      }
    }
    // Colour bar with its end values.
    const double bx0 = kWidth - kRight + 20, top = kTop, bottom = kHeight - kBottom;
    for (int k = 0; k < 50; ++k) {
      const double t = (k + 0.5) / 50.0;
      out += "<rect x=\"" + num(bx0) + "\" y=\"" + num(bottom - (k + 1) * (bottom - top) / 50.0) +
             "\" width=\"16\" height=\"" + num((bottom - top) / 50.0 + 0.05) + "\" fill=\"" + colour(t, diverging) +
             "\"/>\n";
    }
    const double top_value = diverging ? scale : hi;
    const double bottom_value = diverging ? -scale : lo;
    out += "<text x=\"" + num(bx0 + 22) + "\" y=\"" + num(top + 10) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(top_value) + "</text>\n";
    out += "<text x=\"" + num(bx0 + 22) + "\" y=\"" + num(bottom) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + tick_label(bottom_value) + "</text>\n";
  }
  out += axes(f, x_label, y_label);
  out += "</svg>\n";
  return out;
}

}  // namespace qdo::cli
