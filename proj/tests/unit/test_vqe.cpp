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
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "qdo/errors.hpp"
#include "qdo/oracle.hpp"
#include "qdo/vqe.hpp"
#include "test_support.hpp"

namespace qdo {
namespace {

using testing::random_state;

const FockConfig kDim5{5, 2};

ModelParams at(double theta, double d) {
  ModelParams p;
  p.theta = theta;
  p.d = d;
  return p;
}

ModelParams uncharged() {
  ModelParams p;
  p.q1 = p.q2 = 0.0;
  return p;
}

std::vector<double> random_params(int n_layers, std::uint64_t seed, double spread) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> w(static_cast<std::size_t>(n_layers * LayerParams::kSize));
  for (auto& v : w) v = u(rng);
  return w;
}

double dense_energy(const FockVector& s, const ModelParams& p) {
  const CMatrix h = hamiltonian_dense(p, s.config()).cast<Complex>();
  const FockVector n = s.normalized();
  return (n.amplitudes().adjoint() * h * n.amplitudes())(0).real();
}

TEST(EnergyExpectation, UnchargedOscillator) {
  const QuadratureGrid grid;
  EXPECT_NEAR(energy_expectation(FockVector::vacuum(kDim5), uncharged(), grid), 1.0, 1e-15);
  EXPECT_NEAR(energy_expectation(FockVector::basis(kDim5, 1, 0), uncharged(), grid), 2.0, 1e-15);
  EXPECT_THROW(energy_expectation(FockVector(kDim5), uncharged(), grid), DegenerateState);
}

TEST(EnergyExpectation, AgreesWithDenseOracle) {
  const QuadratureGrid grid;
  for (double d : {0.54, 0.82, 1.36, 3.16}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto s = random_state(kDim5, seed);
      EXPECT_NEAR(energy_expectation(s, at(0.58, d), grid), dense_energy(s, at(0.58, d)), 5e-3) << d;
    }
  }
}

TEST(EnergyExpectation, ScaleInvariantInStateNorm) {
  const auto s = random_state(kDim5, 4);
  const FockVector scaled(kDim5, 0.3 * s.amplitudes());
  const QuadratureGrid grid;
  EXPECT_NEAR(energy_expectation(scaled, at(0.58, 1.0), grid), energy_expectation(s, at(0.58, 1.0), grid), 1e-12);
}

TEST(GridEnergy, EqualsLiteralGridEnergy) {
  const QuadratureGrid grid;
  for (double d : {0.4, 1.36}) {
    const ModelParams p = at(0.58, d);
    const GridEnergy energy(p, grid, kDim5);
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
      const auto s = random_state(kDim5, seed);
      EXPECT_NEAR(energy(s), energy_expectation(s, p, grid), 1e-11);
    }
  }
}

TEST(GridEnergy, EnergyFromDensityMatchesExpectation) {
  const QuadratureGrid grid;
  const ModelParams p = at(0.9, 0.7);
  const auto s = random_state(kDim5, 17);
  EXPECT_NEAR(energy_from_density(s, joint_position_density(s, grid), potential_on_grid(p, grid), p, grid),
              energy_expectation(s, p, grid), 1e-14);
}

TEST(Cost, ZeroParametersUncharged) {
  VqeConfig cfg;
  cfg.n_layers = 2;
  for (double gamma : {0.0, 10.0, 1e3}) {
    cfg.norm_penalty = gamma;
    EXPECT_NEAR(cost(CircuitParams(2), uncharged(), cfg), 1.0, 1e-14);
  }
}

TEST(Cost, PenaltyFreeCostIsEnergy) {
  VqeConfig cfg;
  cfg.n_layers = 2;
  cfg.norm_penalty = 0.0;
  const auto params = CircuitParams::unflatten(random_params(2, 3, 0.4));
  const ModelParams p = at(0.58, 1.0);
  const auto out = apply_circuit(params, cfg.fock);
  EXPECT_NEAR(cost(params, p, cfg), energy_expectation(out.state, p, cfg.grid), 1e-11);
}

TEST(Cost, PenaltyPositiveUnderLeakage) {
  VqeConfig cfg;
  cfg.n_layers = 1;
  cfg.gates.padded = true;
  CircuitParams params(1);
  params.layers[0].disp1_mag = 1.2;
  const ModelParams p = at(0.58, 1.0);
  const auto out = apply_circuit(params, cfg.fock, cfg.gates);
  ASSERT_LT(out.norm, 1.0 - 1e-6);
  const double energy = energy_expectation(out.state, p, cfg.grid);
  const double leak = 1.0 - out.norm * out.norm;
  EXPECT_NEAR(cost(params, p, cfg) - energy, cfg.norm_penalty * leak * leak, 1e-11);
  EXPECT_GT(cost(params, p, cfg), energy);
}

TEST(CircuitCost, EvaluateMatchesFreeFunction) {
  VqeConfig cfg;
  cfg.n_layers = 3;
  const ModelParams p = at(0.58, 0.82);
  const CircuitCost objective(p, cfg);
  const auto w = random_params(3, 8, 0.3);
  const auto eval = objective.evaluate(w);
  EXPECT_NEAR(eval.cost, cost(CircuitParams::unflatten(w), p, cfg), 1e-11);
  EXPECT_NEAR(eval.norm, 1.0, 1e-12);
}

TEST(Gradient, CachedMatchesLiteralCentralDifferences) {
  VqeConfig cfg;
  cfg.n_layers = 2;
  const ModelParams p = at(0.58, 1.36);
  const auto w = random_params(2, 21, 0.3);
  const CircuitCost objective(p, cfg);
  const auto g = objective.gradient(w);
  const auto literal = gradient(CircuitParams::unflatten(w), p, cfg);
  ASSERT_EQ(g.size(), w.size());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], literal[i], 1e-8) << i;

  // Direct central difference on the free cost function.
  for (std::size_t i : {0u, 5u, 12u, 20u}) {
    auto plus = w, minus = w;
    plus[i] += cfg.fd_step;
    minus[i] -= cfg.fd_step;
    const double fd = (cost(CircuitParams::unflatten(plus), p, cfg) - cost(CircuitParams::unflatten(minus), p, cfg)) /
                      (2.0 * cfg.fd_step);
    EXPECT_NEAR(g[i], fd, 1e-8) << i;
  }
}

TEST(Gradient, DisplacementMagnitudesVanishAtUnchargedOptimum) {
  VqeConfig cfg;
  cfg.n_layers = 2;
  const auto g = gradient(CircuitParams(2), uncharged(), cfg);
  for (int layer = 0; layer < 2; ++layer) {
    EXPECT_NEAR(g[layer * 14 + 8], 0.0, 1e-10);
    EXPECT_NEAR(g[layer * 14 + 10], 0.0, 1e-10);
  }
}

TEST(Gradient, RichardsonSelfConsistency) {
  VqeConfig cfg;
  cfg.n_layers = 2;
  const ModelParams p = at(0.58, 0.82);
  const CircuitCost objective(p, cfg);
  for (std::uint64_t seed : {31u, 32u}) {
    const auto w = random_params(2, seed, 0.5);
    const auto coarse = objective.gradient(w, 1e-3);
    const auto fine = objective.gradient(w, 5e-4);
    double scale = 0.0;
    for (double v : fine) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < w.size(); ++i) EXPECT_LE(std::abs(coarse[i] - fine[i]), 1e-4 * scale) << i;
  }
}

TEST(Gradient, ExactForQuadraticCost) {
  // A diagonal-only circuit gives C(w) = 1 + sum of photon numbers, which is
  // quadratic in displacement magnitudes: C = 1 + m1^2 + m2^2 at dim 40.
  VqeConfig cfg;
  cfg.n_layers = 1;
  cfg.fock = FockConfig{40, 2};
  CircuitParams params(1);
  params.layers[0].disp1_mag = 0.3;
  params.layers[0].disp2_mag = -0.2;
  const auto g = gradient(params, uncharged(), cfg);
  EXPECT_NEAR(g[8], 0.6, 1e-9);
  EXPECT_NEAR(g[10], -0.4, 1e-9);
}

TEST(RandomInit, RangeAndDeterminism) {
  const auto a = random_init(8, 42);
  const auto b = random_init(8, 42);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, random_init(8, 43));
  ASSERT_EQ(a.size(), 8 * 14);
  for (double v : a.flatten()) {
    EXPECT_GE(v, -0.05);
    EXPECT_LE(v, 0.05);
  }
}

TEST(VqeConfig, Validation) {
  VqeConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.n_layers = 0;
  EXPECT_THROW(cfg.validate(), ParameterOutOfRange);
  cfg = VqeConfig{};
  cfg.learning_rate = 0.0;
  EXPECT_THROW(cfg.validate(), ParameterOutOfRange);
  cfg = VqeConfig{};
  cfg.norm_penalty = -1.0;
  EXPECT_THROW(cfg.validate(), ParameterOutOfRange);
}

TEST(Train, UnchargedConvergesToVacuum) {
  VqeConfig cfg;
  cfg.max_steps = 500;
  cfg.seed = 7;
  const auto result = train(uncharged(), cfg);
  EXPECT_NEAR(result.energy, 1.0, 1e-4);
  EXPECT_LE(result.steps_taken, 500);
  EXPECT_NEAR(result.state.norm(), 1.0, 1e-12);
}

TEST(Train, BitReproducible) {
  VqeConfig cfg;
  cfg.n_layers = 2;
  cfg.max_steps = 40;
  cfg.seed = 1234;
  const ModelParams p = at(0.58, 1.36);
  const auto a = train(p, cfg);
  const auto b = train(p, cfg);
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.energy, b.energy);
  EXPECT_EQ(a.energy_trace, b.energy_trace);
  EXPECT_EQ(a.state.amplitudes(), b.state.amplitudes());
  EXPECT_EQ(a.steps_taken, b.steps_taken);
}

TEST(Train, ResultInvariants) {
  VqeConfig cfg;
  cfg.n_layers = 2;
  cfg.max_steps = 60;
  const ModelParams p = at(0.58, 0.82);
  const auto r = train(p, cfg);
  EXPECT_NEAR(r.energy, energy_expectation(r.state, p, cfg.grid), 1e-10);
  EXPECT_GT(r.final_norm, 0.0);
  EXPECT_LE(r.final_norm, 1.0 + 1e-12);
  EXPECT_EQ(static_cast<int>(r.energy_trace.size()), r.steps_taken);
  EXPECT_LT(r.energy_trace.back(), r.energy_trace.front());
}

TEST(Train, GradientDescentOption) {
  VqeConfig cfg;
  cfg.n_layers = 1;
  cfg.max_steps = 30;
  cfg.optimizer = Optimizer::gradient_descent;
  cfg.learning_rate = 0.05;
  const auto r = train(at(0.58, 0.82), cfg);
  EXPECT_LT(r.energy_trace.back(), r.energy_trace.front());
}

TEST(Train, WarmStartIsUsed) {
  VqeConfig cfg;
  cfg.n_layers = 1;
  cfg.max_steps = 1;
  CircuitParams init(1);
  init.layers[0].disp1_mag = 0.5;
  const auto r = train(uncharged(), cfg, init);
  EXPECT_NEAR(r.energy_trace.front(), 1.25, 1e-2);
}

TEST(Train, NonFiniteCostIsReported) {
  VqeConfig cfg;
  cfg.n_layers = 1;
  cfg.max_steps = 5;
  cfg.norm_penalty = std::numeric_limits<double>::infinity();
  cfg.gates.padded = true;
  CircuitParams init(1);
  init.layers[0].squeeze1 = 0.5;
  try {
    train(at(0.58, 1.0), cfg, init);
    FAIL() << "expected NonFinite";
  } catch (const NonFinite& e) {
    EXPECT_EQ(e.step(), 1);
    EXPECT_EQ(e.params(), init.flatten());
  }
}

TEST(Sampling, SingleShotIsOneSpike) {
  const QuadratureGrid grid;
  const RMatrix rho = sample_quadratures(FockVector::vacuum(kDim5), grid, 1, 3);
  EXPECT_EQ((rho.array() > 0.0).count(), 1);
  EXPECT_NEAR(rho.maxCoeff() * grid.spacing() * grid.spacing(), 1.0, 1e-12);
}

TEST(Sampling, ReproducibleForFixedSeed) {
  const QuadratureGrid grid;
  const auto s = random_state(kDim5, 2);
  EXPECT_EQ(sample_quadratures(s, grid, 5000, 9), sample_quadratures(s, grid, 5000, 9));
  EXPECT_NE(sample_quadratures(s, grid, 5000, 9), sample_quadratures(s, grid, 5000, 10));
}

TEST(Sampling, MarginalTotalVariationForVacuum) {
  const QuadratureGrid grid;
  const auto vac = FockVector::vacuum(kDim5);
  const RMatrix exact = joint_position_density(vac, grid);
  const RMatrix sampled = sample_quadratures(vac, grid, 100000, 123);
  const double dx = grid.spacing();
  EXPECT_NEAR(sampled.sum() * dx * dx, 1.0, 1e-12);
  const RVector m1 = (exact - sampled).rowwise().sum() * dx * dx;
  const RVector m2 = (exact - sampled).colwise().sum().transpose() * dx * dx;
  EXPECT_LE(0.5 * m1.cwiseAbs().sum(), 0.02);
  EXPECT_LE(0.5 * m2.cwiseAbs().sum(), 0.02);
}

TEST(Sampling, JointTotalVariationMatchesMultinomialNoiseFloor) {
  // For a perfect sampler E[TV] = 1/2 sum E|phat - p|; the normal
  // approximation gives 1/2 sum sqrt(2 p (1 - p) / (pi M)).
  const QuadratureGrid grid;
  const auto vac = FockVector::vacuum(kDim5);
  const int shots = 100000;
  const double dx2 = grid.spacing() * grid.spacing();
  const RMatrix p = joint_position_density(vac, grid) * dx2;
  const RMatrix q = sample_quadratures(vac, grid, shots, 321) * dx2;
  double floor = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double pi = p.data()[i];
    // Poisson-binomial exact mean absolute deviation is below the normal one
    // for sparse cells; bound it by min(normal, 2p).
    floor += 0.5 * std::min(std::sqrt(2.0 * pi * (1.0 - pi) / (std::numbers::pi * shots)), 2.0 * pi);
  }
  const double tv = 0.5 * (p - q).cwiseAbs().sum();
  EXPECT_LT(tv, 1.1 * floor);
  EXPECT_GT(tv, 0.7 * floor);
}

TEST(SampledEnergy, UnchargedVacuumIsExact) {
  const QuadratureGrid grid;
  for (int shots : {1, 10, 1000}) {
    EXPECT_EQ(estimate_energy_sampled(FockVector::vacuum(kDim5), uncharged(), grid, shots, 5), 1.0);
  }
}

TEST(SampledEnergy, VarianceDecreasesWithShots) {
  const QuadratureGrid grid;
  const ModelParams p = at(0.58, 1.36);
  const auto s = random_state(kDim5, 77);
  auto variance = [&](int shots) {
    std::vector<double> e;
    for (std::uint64_t seed = 0; seed < 20; ++seed) e.push_back(estimate_energy_sampled(s, p, grid, shots, seed));
    double mean = 0.0;
    for (double v : e) mean += v / e.size();
    double var = 0.0;
    for (double v : e) var += (v - mean) * (v - mean) / (e.size() - 1);
    return var;
  };
  const double v100 = variance(100), v1000 = variance(1000), v10000 = variance(10000);
  EXPECT_GT(v100, v1000);
  EXPECT_GT(v1000, v10000);
}

}  // namespace
}  // namespace qdo
