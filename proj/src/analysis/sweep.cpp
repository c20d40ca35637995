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
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

#include "qdo/analysis.hpp"
#include "qdo/errors.hpp"
#include "qdo/oracle.hpp"

namespace qdo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const SingularConfiguration*>(&e)) return "SingularConfiguration";
  if (dynamic_cast<const DegenerateState*>(&e)) return "DegenerateState";
  if (dynamic_cast<const ParameterOutOfRange*>(&e)) return "ParameterOutOfRange";
  if (dynamic_cast<const NonFinite*>(&e)) return "NonFinite";
  return "Error";
}

void record_failure(BindingPoint& point, const std::exception& e) {
  point.status = error_kind(e);
  point.message = e.what();
}

void fill_state_metrics(BindingPoint& point, const FockVector& state, const QuadratureGrid& grid,
                        bool keep_state) {
  point.entropy = von_neumann_entropy(partial_trace(state, Mode::first));
  point.correlation = correlation_coefficient(state, grid);
  if (keep_state) point.state = state;
}

BindingPoint oracle_point(double theta, double d, const ModelParams& defaults, const VqeConfig& cfg,
                          const SweepOptions& options) {
  BindingPoint point;
  point.d = d;
  point.source = Engine::oracle;
  try {
    ModelParams p = defaults;
    p.theta = theta;
    p.d = d;
    const auto exact = ground_state_exact(p, cfg.fock, options.quad_order);
    point.energy = exact.energy;
    point.binding_energy = exact.energy - uncoupled_ground_energy(p);
    point.norm = 1.0;
    fill_state_metrics(point, exact.state, cfg.grid, options.keep_states);
  } catch (const Error& e) {
    record_failure(point, e);
  }
  return point;
}

}  // namespace

const char* engine_name(Engine engine) { return engine == Engine::vqe ? "vqe" : "oracle"; }

Engine parse_engine(const std::string& name) {
  if (name == "vqe") return Engine::vqe;
  if (name == "oracle") return Engine::oracle;
  throw ConfigError("unknown engine '" + name + "' (expected vqe or oracle)");
}

std::vector<double> distance_grid(double d_min, double d_max, int count) {
  if (count < 1) throw ParameterOutOfRange("distance grid needs at least one point");
  if (!(d_min >= 0.0 && d_max > d_min)) throw ParameterOutOfRange("distance grid needs 0 <= d_min < d_max");
  std::vector<double> d(static_cast<std::size_t>(count));
  const double step = (d_max - d_min) / count;
  for (int k = 1; k <= count; ++k) d[static_cast<std::size_t>(k - 1)] = d_min + k * step;
  d.back() = d_max;
  return d;
}

std::uint64_t point_seed(std::uint64_t seed, double theta, double d) {
  const auto h = splitmix64(std::bit_cast<std::uint64_t>(theta)) ^
                 splitmix64(std::rotl(std::bit_cast<std::uint64_t>(d), 17));
  return seed ^ splitmix64(h);
}

BindingCurve sweep(double theta, std::span<const double> d_grid, const ModelParams& defaults,
                   const VqeConfig& cfg, const SweepOptions& options) {
  for (std::size_t i = 1; i < d_grid.size(); ++i) {
    if (!(d_grid[i] > d_grid[i - 1])) throw ParameterOutOfRange("distance grid must be strictly increasing");
  }
  BindingCurve curve;
  curve.theta = theta;
  curve.points.resize(d_grid.size());

  if (options.engine == Engine::oracle) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers =
        std::min<std::size_t>(options.threads > 0 ? static_cast<std::size_t>(options.threads) : hw, d_grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < d_grid.size(); i = next++) {
        curve.points[i] = oracle_point(theta, d_grid[i], defaults, cfg, options);
      }
    };
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return curve;
  }

  // Largest distance first; each point warm-starts from the last success.
  std::optional<CircuitParams> warm;
  for (std::size_t k = d_grid.size(); k-- > 0;) {
    const double d = d_grid[k];
    BindingPoint& point = curve.points[k];
    point.d = d;
    point.source = Engine::vqe;
    try {
      ModelParams p = defaults;
      p.theta = theta;
      p.d = d;
      VqeConfig point_cfg = cfg;
      point_cfg.seed = point_seed(cfg.seed, theta, d);
      const VqeResult result = train(p, point_cfg, warm);
      point.energy = result.energy;
      point.binding_energy = result.energy - uncoupled_ground_energy(p);
      point.norm = result.final_norm;
      point.steps = result.steps_taken;
      point.converged = result.converged;
      fill_state_metrics(point, result.state, cfg.grid, options.keep_states);
      warm = result.params;
    } catch (const Error& e) {
      record_failure(point, e);
    }
  }
  return curve;
}

}  // namespace qdo
