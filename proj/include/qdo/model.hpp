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

#include <vector>

#include "qdo/fock.hpp"

namespace qdo {

/// Physical parameters of the one-dimensional two-oscillator model, in units
/// with hbar = 4 pi eps0 = 1 unless hbar is overridden.
struct ModelParams {
  double theta = 0.58;  // angle between drudon axis and internuclear axis
  double d = 1.0;       // internuclear distance
  double omega1 = 1.0;
  double omega2 = 1.0;
  double m1 = 1.0;
  double m2 = 1.0;
  double q1 = 1.0;
  double q2 = 1.0;
  double hbar = 1.0;
  double softening = 0.0;  // added as softening^2 under each square root

  void validate() const;
  bool symmetric() const { return omega1 == omega2 && m1 == m2 && q1 == q2; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Drudon-drudon plus drudon-nucleus Coulomb energy for drudon
/// displacements x1, x2 along the common axis.  Throws
/// SingularConfiguration when a denominator falls below 1e-12.
double coulomb_potential(const ModelParams& p, double x1, double x2);

struct ScaleFactors {
  double lambda1;
  double lambda2;
};

/// lambda_i = sqrt(hbar / (m_i omega_i)); physical x_i = lambda_i X_i.
ScaleFactors scale_factors(const ModelParams& p);

/// V(lambda1 x1, lambda2 x2) on every grid node pair, entry (i, j) at
/// (x1_i, x2_j).  Singular nodes are collected and reported together.
RMatrix potential_on_grid(const ModelParams& p, const QuadratureGrid& grid);

/// Nodes and weights of the order-n Gauss-Hermite rule for weight e^{-x^2}.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// weights[i] * exp(nodes[i]^2), the weight to use with Hermite functions.
  std::vector<double> function_weights;
};

GaussHermiteRule gauss_hermite(int order);

/// Dense Hamiltonian on the truncated two-mode space, lexicographic (n1, n2)
/// basis.  Potential matrix elements use Gauss-Hermite quadrature of order
/// quad_order >= 2 dim_per_mode; the result is symmetrized.
RMatrix hamiltonian_dense(const ModelParams& p, const FockConfig& config, int quad_order = 80);

/// hbar (omega1 + omega2) / 2.
double uncoupled_ground_energy(const ModelParams& p);

/// Operator implementing (x1, x2) -> (-x2, -x1): |n1, n2> -> (-1)^{n1+n2} |n2, n1>.
RMatrix swap_parity_operator(const FockConfig& config);

}  // namespace qdo
