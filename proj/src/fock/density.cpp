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

#include "qdo/errors.hpp"
#include "qdo/fock.hpp"

namespace qdo {

DensityMatrix partial_trace(const FockVector& state, Mode keep) {
  const AmplitudeMatrix a = state.normalized().as_matrix();
  // rho_1(n, m) = sum_l a(n, l) conj(a(m, l)); rho_2 analogous over rows.
  if (keep == Mode::first) return DensityMatrix(a * a.adjoint());
  return DensityMatrix(a.transpose() * a.conjugate());
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double entropy = 0.0;
  for (const double p : rho.eigenvalues()) {
    if (p > 1e-14) entropy -= p * std::log(p);
  }
  return std::max(entropy, 0.0);
}

double mutual_information(const FockVector& state) {
  return 2.0 * von_neumann_entropy(partial_trace(state, Mode::first));
}

double fidelity(const FockVector& a, const FockVector& b) {
  if (a.config() != b.config()) throw ParameterOutOfRange("fidelity of states with different cutoffs");
  const double overlap = std::norm(a.normalized().amplitudes().dot(b.normalized().amplitudes()));
  return std::min(overlap, 1.0);
}

double number_expectation(const FockVector& state, Mode mode) {
  const AmplitudeMatrix a = state.normalized().as_matrix();
  const RVector weights = mode == Mode::first ? RVector(a.cwiseAbs2().rowwise().sum())
                                              : RVector(a.cwiseAbs2().colwise().sum().transpose());
  double n = 0.0;
  for (Eigen::Index k = 0; k < weights.size(); ++k) n += static_cast<double>(k) * weights[k];
  return n;
}

}  // namespace qdo
