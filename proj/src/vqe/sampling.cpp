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

#include <algorithm>
#include <numeric>
#include <random>

#include "qdo/errors.hpp"
#include "qdo/vqe.hpp"

namespace qdo {

RMatrix sample_quadratures(const FockVector& state, const QuadratureGrid& grid, int shots,
                           std::uint64_t seed) {
  if (shots < 1) throw ParameterOutOfRange("shot count must be at least 1");
  const RMatrix density = joint_position_density(state, grid);
  const int n = grid.size();

  // Row-major flattening of the cell probabilities rho dx^2.
  std::vector<double> cdf(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) cdf[static_cast<std::size_t>(i) * n + j] = density(i, j);
  }
  std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, cdf.back());
  RMatrix counts = RMatrix::Zero(n, n);
  for (int shot = 0; shot < shots; ++shot) {
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), uniform(rng));
    const auto cell = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    counts(static_cast<Eigen::Index>(cell / n), static_cast<Eigen::Index>(cell % n)) += 1.0;
  }
  const double dx2 = grid.spacing() * grid.spacing();
  return counts / (static_cast<double>(shots) * dx2);
}

double estimate_energy_sampled(const FockVector& state, const ModelParams& p, const QuadratureGrid& grid,
                               int shots, std::uint64_t seed) {
  return energy_from_density(state, sample_quadratures(state, grid, shots, seed),
                             potential_on_grid(p, grid), p, grid);
}

}  // namespace qdo
