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
#include <random>
#include <sstream>

#include "qdo/errors.hpp"
#include "qdo/vqe.hpp"

namespace qdo {

namespace {

constexpr double kInitHalfWidth = 0.05;
constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEpsilon = 1e-8;

class AdamState {
 public:
  explicit AdamState(std::size_t n) : m_(n, 0.0), v_(n, 0.0) {}

  void step(std::vector<double>& w, const std::vector<double>& g, double lr) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, t_);
    const double c2 = 1.0 - std::pow(kBeta2, t_);
    for (std::size_t i = 0; i < w.size(); ++i) {
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * g[i];
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * g[i] * g[i];
      w[i] -= lr * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kAdamEpsilon);
    }
  }

 private:
  std::vector<double> m_;
  std::vector<double> v_;
  int t_ = 0;
};

[[noreturn]] void non_finite(const char* what, int step, const std::vector<double>& w) {
  std::ostringstream msg;
  msg << what << " became non-finite at step " << step;
  throw NonFinite(msg.str(), step, w);
}

}  // namespace

CircuitParams random_init(int n_layers, std::uint64_t seed) {
  if (n_layers < 1) throw ParameterOutOfRange("n_layers must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-kInitHalfWidth, kInitHalfWidth);
  std::vector<double> values(static_cast<std::size_t>(n_layers * LayerParams::kSize));
  for (auto& v : values) v = dist(rng);
  return CircuitParams::unflatten(values);
}

VqeResult train(const ModelParams& p, const VqeConfig& cfg, const std::optional<CircuitParams>& init) {
  cfg.validate();
  p.validate();
  const CircuitCost objective(p, cfg);
  const CircuitParams start = init ? *init : random_init(cfg.n_layers, cfg.seed);
  if (start.n_layers() < 1) throw ParameterOutOfRange("initial circuit has no layers");

  std::vector<double> w = start.flatten();
  AdamState adam(w.size());
  VqeResult result;
  result.energy_trace.reserve(static_cast<std::size_t>(cfg.max_steps));

  double previous = 0.0;
  int calm_steps = 0;
  int step = 1;
  for (; step <= cfg.max_steps; ++step) {
    const auto eval = objective.evaluate(w);
    if (!std::isfinite(eval.cost)) non_finite("cost", step, w);
    result.energy_trace.push_back(eval.energy);
    if (step > 1 && std::abs(eval.cost - previous) < cfg.tolerance) {
      if (++calm_steps >= cfg.patience) {
        result.converged = true;
        break;
      }
    } else {
      calm_steps = 0;
    }
    previous = eval.cost;

    const auto g = objective.gradient(w);
    for (const double gi : g) {
      if (!std::isfinite(gi)) non_finite("gradient", step, w);
    }
    if (cfg.optimizer == Optimizer::adam) {
      adam.step(w, g, cfg.learning_rate);
    } else {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.learning_rate * g[i];
    }
  }
  result.steps_taken = std::min(step, cfg.max_steps);

  result.params = CircuitParams::unflatten(w);
  const CircuitOutput out = apply_circuit(result.params, cfg.fock, cfg.gates);
  result.final_norm = out.norm;
  result.state = out.state.normalized();
  result.energy = objective.energy()(result.state);
  if (!std::isfinite(result.energy)) non_finite("final energy", result.steps_taken, w);
  return result;
}

}  // namespace qdo
