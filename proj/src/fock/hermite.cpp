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

#include <cmath>
#include <numbers>

#include "qdo/fock.hpp"

namespace qdo {

std::vector<double> hermite_functions(int max_level, double x) {
  std::vector<double> psi(static_cast<std::size_t>(max_level) + 1, 0.0);
  psi[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  if (max_level >= 1) psi[1] = std::numbers::sqrt2 * x * psi[0];
  for (int k = 2; k <= max_level; ++k) {
    const double kd = static_cast<double>(k);
    psi[k] = std::sqrt(2.0 / kd) * x * psi[k - 1] - std::sqrt((kd - 1.0) / kd) * psi[k - 2];
  }
  return psi;
}

double hermite_function(int n, double x) { return hermite_functions(n, x).back(); }

RMatrix hermite_table(int max_level, std::span<const double> xs) {
  RMatrix table(max_level + 1, static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto psi = hermite_functions(max_level, xs[i]);
    for (int n = 0; n <= max_level; ++n) table(n, static_cast<Eigen::Index>(i)) = psi[n];
  }
  return table;
}

}  // namespace qdo
