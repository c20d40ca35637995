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

#pragma once

#include <string>
#include <vector>

#include "qdo/fock.hpp"

namespace qdo::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers = false;
};

/// Standalone SVG line plot.  Non-finite samples break the polyline; with no
/// finite samples at all only the axes are drawn.  Output depends only on the
/// arguments.
std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Series>& series);

struct Axis {
  double min;
  double max;
};

/// Standalone SVG heat map of field(i, j) with i along x and j along y.  The
/// field is block-averaged to at most `max_cells` per side; a field with both
/// signs uses a diverging palette centred on zero.
std::string heat_map(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const RMatrix& field, Axis x, Axis y, int max_cells = 100);

}  // namespace qdo::cli
