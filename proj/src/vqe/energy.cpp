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
#include <string>

#include "qdo/errors.hpp"
#include "qdo/vqe.hpp"

namespace qdo {

namespace {

// hbar omega1 (n1 + 1/2) + hbar omega2 (n2 + 1/2) per basis index.
RVector oscillator_energies(const ModelParams& p, const FockConfig& config) {
  RVector e(config.size());
  for (int n1 = 0; n1 < config.dim_per_mode; ++n1) {
    for (int n2 = 0; n2 < config.dim_per_mode; ++n2) {
      e[config.index(n1, n2)] = p.hbar * (p.omega1 * (n1 + 0.5) + p.omega2 * (n2 + 0.5));
    }
  }
  return e;
}

double oscillator_term(const FockVector& state, const ModelParams& p) {
  const double norm2 = state.squared_norm();
  if (!(norm2 >= 1e-24)) throw DegenerateState("energy of a zero-norm state");
  return oscillator_energies(p, state.config()).dot(state.amplitudes().cwiseAbs2()) / norm2;
}

// Real quadratic form z^dag M z for real symmetric M.
double quadratic_form(const RMatrix& m, const CVector& z) {
  const RVector re = z.real();
  const RVector im = z.imag();
  return re.dot(m * re) + im.dot(m * im);
}

}  // namespace

void VqeConfig::validate() const {
  auto fail = [](const std::string& what) { throw ParameterOutOfRange(what); };
  if (n_layers < 1) fail("n_layers must be at least 1");
  if (max_steps < 1) fail("max_steps must be at least 1");
  if (!(learning_rate > 0.0)) fail("learning_rate must be positive");
  if (!(fd_step > 0.0)) fail("fd_step must be positive");
  if (!(norm_penalty >= 0.0)) fail("norm_penalty must be non-negative");
  if (!(tolerance > 0.0)) fail("tolerance must be positive");
  if (patience < 1) fail("patience must be at least 1");
  fock.validate();
}

double energy_from_density(const FockVector& state, const RMatrix& density, const RMatrix& potential,
                           const ModelParams& p, const QuadratureGrid& grid) {
  const double dx2 = grid.spacing() * grid.spacing();
  return oscillator_term(state, p) + density.cwiseProduct(potential).sum() * dx2;
}

double energy_expectation(const FockVector& state, const ModelParams& p, const QuadratureGrid& grid) {
  return energy_from_density(state, joint_position_density(state, grid), potential_on_grid(p, grid), p,
                             grid);
}

GridEnergy::GridEnergy(const ModelParams& p, const QuadratureGrid& grid, const FockConfig& config)
    : params_(p), config_(config), potential_(potential_on_grid(p, grid)) {
  config.validate();
  const int dim = config.dim_per_mode;
  const int n = grid.size();
  const double dx = grid.spacing();
  const RMatrix psi = hermite_table(dim - 1, grid.nodes());

  // b(i, n*dim + m) = psi_n(x_i) psi_m(x_i)
  RMatrix b(n, dim * dim);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k) {
      for (int m = 0; m < dim; ++m) b(i, k * dim + m) = psi(k, i) * psi(m, i);
    }
  }
  const RMatrix t = b.transpose() * potential_ * b * (dx * dx);
  const RMatrix gram = psi * psi.transpose() * dx;

  projected_potential_.resize(config.size(), config.size());
  grid_overlap_.resize(config.size(), config.size());
  for (int n1 = 0; n1 < dim; ++n1) {
    for (int n2 = 0; n2 < dim; ++n2) {
      for (int m1 = 0; m1 < dim; ++m1) {
        for (int m2 = 0; m2 < dim; ++m2) {
          const int row = config.index(n1, n2);
          const int col = config.index(m1, m2);
          projected_potential_(row, col) = t(n1 * dim + m1, n2 * dim + m2);
          grid_overlap_(row, col) = gram(n1, m1) * gram(n2, m2);
        }
      }
    }
  }
}

double GridEnergy::operator()(const FockVector& state) const {
  const double mass = quadratic_form(grid_overlap_, state.amplitudes());
  if (!(state.norm() >= 1e-12) || !(mass > 0.0)) throw DegenerateState("energy of a zero-norm state");
  return oscillator_term(state, params_) + quadratic_form(projected_potential_, state.amplitudes()) / mass;
}

CircuitCost::CircuitCost(const ModelParams& p, const VqeConfig& cfg)
    : cfg_(cfg), energy_(p, cfg.grid, cfg.fock) {
  cfg_.validate();
}

double CircuitCost::cost_of(const FockVector& state) const {
  const double leak = 1.0 - state.squared_norm();
  return energy_(state) + cfg_.norm_penalty * leak * leak;
}

CircuitCost::Evaluation CircuitCost::evaluate(std::span<const double> params) const {
  const CircuitOutput out = apply_circuit(CircuitParams::unflatten(params), cfg_.fock, cfg_.gates);
  const double e = energy_(out.state);
  const double leak = 1.0 - out.norm * out.norm;
  return {e + cfg_.norm_penalty * leak * leak, e, out.norm};
}

std::vector<double> CircuitCost::gradient(std::span<const double> params) const {
  return gradient(params, cfg_.fd_step);
}

std::vector<double> CircuitCost::gradient(std::span<const double> params, double step) const {
  const CircuitParams circuit = CircuitParams::unflatten(params);
  const int dim = cfg_.fock.dim_per_mode;

  std::vector<GateOp> ops;
  ops.reserve(static_cast<std::size_t>(circuit.n_layers() * kOpsPerLayer));
  for (const auto& layer : circuit.layers) {
    auto layer_gates = layer_ops(layer, dim, cfg_.gates);
    std::move(layer_gates.begin(), layer_gates.end(), std::back_inserter(ops));
  }
  // prefix[k] is the state entering op k.
  std::vector<FockVector> prefix;
  prefix.reserve(ops.size());
  FockVector state = FockVector::vacuum(cfg_.fock);
  for (const auto& op : ops) {
    prefix.push_back(state);
    apply_op(op, state);
  }

  std::vector<double> grad(params.size());
  for (std::size_t q = 0; q < params.size(); ++q) {
    const auto layer = static_cast<std::size_t>(q / LayerParams::kSize);
    const int local = static_cast<int>(q % LayerParams::kSize);
    const int local_op = op_index_of_parameter(local);
    const std::size_t k = layer * kOpsPerLayer + static_cast<std::size_t>(local_op);

    auto shifted_cost = [&](double delta) {
      auto values = circuit.layers[layer].to_array();
      values[static_cast<std::size_t>(local)] += delta;
      const GateOp op = layer_op(LayerParams::from_array(values), local_op, dim, cfg_.gates);
      FockVector t = prefix[k];
      apply_op(op, t);
      for (std::size_t j = k + 1; j < ops.size(); ++j) apply_op(ops[j], t);
      return cost_of(t);
    };
    grad[q] = (shifted_cost(step) - shifted_cost(-step)) / (2.0 * step);
  }
  return grad;
}

double cost(const CircuitParams& params, const ModelParams& p, const VqeConfig& cfg) {
  cfg.validate();
  const CircuitOutput out = apply_circuit(params, cfg.fock, cfg.gates);
  const double leak = 1.0 - out.norm * out.norm;
  return energy_expectation(out.state, p, cfg.grid) + cfg.norm_penalty * leak * leak;
}

std::vector<double> gradient(const CircuitParams& params, const ModelParams& p, const VqeConfig& cfg) {
  return CircuitCost(p, cfg).gradient(params.flatten());
}

}  // namespace qdo
