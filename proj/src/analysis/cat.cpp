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

#include "analysis/nelder_mead.hpp"
#include "qdo/analysis.hpp"
#include "qdo/errors.hpp"

namespace qdo {

namespace {

constexpr double kMaxCatAmplitude = 3.0;

bool inside(const CatSearchBox& box, double re, double im) {
  return re >= box.re_min && re <= box.re_max && im >= box.im_min && im <= box.im_max;
}

}  // namespace

CVector coherent_amplitudes(Complex alpha, int dim) {
  CVector c(dim);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

FockVector cat_state(Complex alpha, const FockConfig& config) {
  config.validate();
  if (!(std::abs(alpha) <= kMaxCatAmplitude)) {
    throw ParameterOutOfRange("cat amplitude exceeds 3");
  }
  const int dim = config.dim_per_mode;
  FockVector branch = FockVector::product(coherent_amplitudes(alpha, dim), coherent_amplitudes(-alpha, dim));
  branch.amplitudes()[config.index(0, 0)] += 1.0;
  return branch.normalized();
}

CatFit fit_cat(const FockVector& state, const FockConfig& config, const CatSearchBox& box) {
  const FockVector target = state.normalized();
  auto score = [&](double re, double im) { return fidelity(target, cat_state(Complex(re, im), config)); };

  CatFit best{Complex(0.0, 0.0), -1.0};
  const int n_re = static_cast<int>(std::floor((box.re_max - box.re_min) / box.step + 1e-9)) + 1;
  const int n_im = static_cast<int>(std::floor((box.im_max - box.im_min) / box.step + 1e-9)) + 1;
  for (int i = 0; i < n_re; ++i) {
    for (int j = 0; j < n_im; ++j) {
      const double re = box.re_min + i * box.step;
      const double im = box.im_min + j * box.step;
      if (std::abs(Complex(re, im)) > kMaxCatAmplitude) continue;
      const double f = score(re, im);
      if (f > best.fidelity) best = {Complex(re, im), f};
    }
  }

  auto objective = [&](const Eigen::VectorXd& v) {
    if (!inside(box, v[0], v[1]) || std::abs(Complex(v[0], v[1])) > kMaxCatAmplitude) return 1.0;
    return -score(v[0], v[1]);
  };
  const Eigen::Vector2d start(best.alpha.real(), best.alpha.imag());
  const Eigen::Vector2d step(0.5 * box.step, 0.5 * box.step);
  const auto refined = detail::nelder_mead(objective, start, step, 2000, 1e-15);
  if (-refined.value > best.fidelity) best = {Complex(refined.x[0], refined.x[1]), -refined.value};
  return best;
}

}  // namespace qdo
