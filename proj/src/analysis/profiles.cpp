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
#include <cmath>

#include "qdo/analysis.hpp"
#include "qdo/errors.hpp"

namespace qdo {

double correlation_coefficient(const QuadratureMoments& m) {
  const double var1 = m.second1 - m.mean1 * m.mean1;
  const double var2 = m.second2 - m.mean2 * m.mean2;
  if (var1 < 1e-12 || var2 < 1e-12) throw DegenerateState("quadrature variance vanishes");
  const double c = (m.cross - m.mean1 * m.mean2) / (std::sqrt(var1) * std::sqrt(var2));
  return std::clamp(c, -1.0, 1.0);
}

double correlation_coefficient(const FockVector& state, const QuadratureGrid& grid) {
  return correlation_coefficient(quadrature_moments(state, grid));
}

std::vector<double> kernel_smooth(std::span<const double> x, std::span<const double> y, double bandwidth) {
  if (x.size() != y.size()) throw ParameterOutOfRange("kernel smooth needs matching x and y");
  if (!(bandwidth > 0.0)) throw ParameterOutOfRange("kernel bandwidth must be positive");
  std::vector<double> out(x.size(), 0.0);
  if (x.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  auto kernel = [&](double u) { return std::exp(-0.5 * u * u / (bandwidth * bandwidth)); };
  for (std::size_t i = 0; i < x.size(); ++i) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      // The sample itself plus its mirror images across both edges.
      const double w = kernel(x[i] - x[j]) + kernel(x[i] - (2.0 * lo - x[j])) + kernel(x[i] - (2.0 * hi - x[j]));
      num += w * y[j];
      den += w;
    }
    out[i] = num / den;
  }
  return out;
}

EntropyProfile entropy_profile(const BindingCurve& curve, double bandwidth) {
  EntropyProfile profile;
  for (const auto& point : curve.points) {
    if (!point.ok()) continue;
    profile.d.push_back(point.d);
    profile.entropy.push_back(point.state ? 0.5 * mutual_information(*point.state) : point.entropy);
  }
  profile.smoothed = kernel_smooth(profile.d, profile.entropy, bandwidth);
  return profile;
}

std::vector<double> antidiagonal_profile(const RMatrix& density) {
  if (density.rows() != density.cols()) throw ParameterOutOfRange("density field must be square");
  const auto n = density.rows();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = density(i, n - 1 - i);
  return out;
}

Bimodality detect_bimodality(std::span<const double> profile, double min_dip) {
  Bimodality result;
  if (profile.size() < 3) return result;
  const double global = *std::max_element(profile.begin(), profile.end());
  std::vector<int> peaks;
  for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
    if (profile[i] > profile[i - 1] && profile[i] >= profile[i + 1] && profile[i] >= 1e-3 * global) {
      peaks.push_back(static_cast<int>(i));
    }
  }
  for (std::size_t k = 0; k + 1 < peaks.size(); ++k) {
    const int a = peaks[k];
    const int b = peaks[k + 1];
    const double valley = *std::min_element(profile.begin() + a, profile.begin() + b + 1);
    const double lower_peak = std::min(profile[static_cast<std::size_t>(a)], profile[static_cast<std::size_t>(b)]);
    const double dip = 1.0 - valley / lower_peak;
    if (dip > result.dip_fraction) {
      result.dip_fraction = dip;
      result.first_peak = a;
      result.second_peak = b;
    }
  }
  result.bimodal = result.dip_fraction >= min_dip;
  return result;
}

}  // namespace qdo
