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
#include "qdo/model.hpp"

namespace qdo {

// Golub-Welsch eigenvalues of the Jacobi matrix, polished by Newton steps on
// psi_order.  Weights come from the Christoffel numbers
// 1 / sum_k p_k(x)^2 with orthonormal p_k = psi_k e^{x^2/2}.
GaussHermiteRule gauss_hermite(int order) {
  if (order < 1) throw ParameterOutOfRange("Gauss-Hermite order must be positive");
  RMatrix jacobi = RMatrix::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
  }
  const RVector eig = Eigen::SelfAdjointEigenSolver<RMatrix>(jacobi, Eigen::EigenvaluesOnly).eigenvalues();

  GaussHermiteRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(rule.nodes.size());
  rule.function_weights.resize(rule.nodes.size());
  for (int i = 0; i < order; ++i) {
    double x = eig[i];
    for (int iter = 0; iter < 3; ++iter) {
      const auto psi = hermite_functions(order, x);
      const double derivative = std::sqrt(2.0 * order) * psi[order - 1] - x * psi[order];
      if (derivative == 0.0) break;
      x -= psi[order] / derivative;
    }
    const auto psi = hermite_functions(order - 1, x);
    double sum = 0.0;
    for (const double v : psi) sum += v * v;
    rule.nodes[i] = x;
    rule.function_weights[i] = 1.0 / sum;
    rule.weights[i] = std::exp(-x * x) / sum;
  }
  return rule;
}

}  // namespace qdo
