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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qdo/fock.hpp"
#include "qdo/gates.hpp"
#include "qdo/model.hpp"

namespace qdo {

enum class Optimizer { gradient_descent, adam };

struct VqeConfig {
  int n_layers = 8;
  int max_steps = 5000;
  double learning_rate = 0.01;
  Optimizer optimizer = Optimizer::adam;
  double fd_step = 1e-3;
  double norm_penalty = 10.0;
  /// Stop once |C_t - C_{t-1}| < tolerance for `patience` consecutive steps.
  double tolerance = 1e-6;
  int patience = 50;
  std::uint64_t seed = 0;
  QuadratureGrid grid;
  FockConfig fock;
  GateOptions gates;

  void validate() const;
};

struct VqeResult {
  CircuitParams params;
  double energy = 0.0;
  std::vector<double> energy_trace;
  FockVector state{FockConfig{}};  // normalized
  double final_norm = 0.0;
  int steps_taken = 0;
  bool converged = false;
};

/// <H> from exact photon numbers and the renormalized grid density of the
/// normalized state.
double energy_expectation(const FockVector& state, const ModelParams& p, const QuadratureGrid& grid);

/// Same as energy_expectation with a caller-supplied density (normalized as
/// sum(rho) dx^2 = 1) and potential field.
double energy_from_density(const FockVector& state, const RMatrix& density, const RMatrix& potential,
                           const ModelParams& p, const QuadratureGrid& grid);

/// The grid energy functional with the potential folded into Fock-basis
/// matrices once, so each evaluation is a pair of dim^2 quadratic forms.
/// Algebraically identical to energy_expectation.
class GridEnergy {
 public:
  GridEnergy(const ModelParams& p, const QuadratureGrid& grid, const FockConfig& config);

  double operator()(const FockVector& state) const;
  const RMatrix& potential() const { return potential_; }

 private:
  ModelParams params_;
  FockConfig config_;
  RMatrix potential_;
  RMatrix projected_potential_;  // sum_grid V psi psi psi psi dx^2
  RMatrix grid_overlap_;         // sum_grid psi psi psi psi dx^2
};

/// Circuit cost with the finite-difference gradient, built for repeated
/// evaluation during training.
class CircuitCost {
 public:
  CircuitCost(const ModelParams& p, const VqeConfig& cfg);

  struct Evaluation {
    double cost;
    double energy;
    double norm;
  };

  Evaluation evaluate(std::span<const double> params) const;
  double cost_of(const FockVector& state) const;
  /// Central differences (C(w + h e_i) - C(w - h e_i)) / 2h.
  std::vector<double> gradient(std::span<const double> params) const;
  /// Gradient with an explicit step, for Richardson-style checks.
  std::vector<double> gradient(std::span<const double> params, double step) const;

  const GridEnergy& energy() const { return energy_; }

 private:
  VqeConfig cfg_;
  GridEnergy energy_;
};

/// energy_expectation of the circuit output plus gamma (1 - |psi|^2)^2.
double cost(const CircuitParams& params, const ModelParams& p, const VqeConfig& cfg);
std::vector<double> gradient(const CircuitParams& params, const ModelParams& p, const VqeConfig& cfg);

/// Parameters drawn uniformly from [-0.05, 0.05].
CircuitParams random_init(int n_layers, std::uint64_t seed);

/// Gradient-based training loop.  `init` warm-starts the run; without it
/// the parameters come from random_init(cfg.n_layers, cfg.seed).
VqeResult train(const ModelParams& p, const VqeConfig& cfg,
                const std::optional<CircuitParams>& init = std::nullopt);

/// Empirical joint density from `shots` draws of the discretized position
/// quadratures.  Normalized like joint_position_density.
RMatrix sample_quadratures(const FockVector& state, const QuadratureGrid& grid, int shots,
                           std::uint64_t seed);

/// energy_expectation with the sampled density in place of the exact one.
double estimate_energy_sampled(const FockVector& state, const ModelParams& p,
                               const QuadratureGrid& grid, int shots, std::uint64_t seed);

}  // namespace qdo
