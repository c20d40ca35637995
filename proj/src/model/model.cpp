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
#include <span>
#include <limits>
#include <sstream>
#include <string>

#include "qdo/errors.hpp"
#include "qdo/model.hpp"

namespace qdo {

namespace {

constexpr double kMinDenominator = 1e-12;
constexpr double kHalfPi = 1.5707963267948966;

// Trapezoid rule for the directions in which the Coulomb terms vary sharply.
// The error decays like exp(-2 pi pole / step), so kStepsPerPole = 6 gives
// about 1e-16 relative accuracy.
constexpr double kTrapezoidHalfWidth = 12.0;
constexpr double kMaxTrapezoidStep = 0.004;
constexpr double kStepsPerPole = 6.0;
constexpr int kMaxHalfNodes = 500000;

// Inverse of sqrt(arg + eps^2); nullopt-like NaN marks a singular node.
double inverse_distance(double arg, double eps2) {
  const double r = std::sqrt(std::max(arg, 0.0) + eps2);
  return r < kMinDenominator ? std::numeric_limits<double>::quiet_NaN() : 1.0 / r;
}

double potential_or_nan(const ModelParams& p, double x1, double x2) {
  if (p.q1 * p.q2 == 0.0) return 0.0;  // no coupling, nothing can diverge
  const double c = std::cos(p.theta);
  const double d = p.d;
  const double eps2 = p.softening * p.softening;
  const double dx = x2 - x1;
  const double sum = 1.0 / d - inverse_distance(d * d + 2.0 * d * c * x1 + x1 * x1, eps2) -
                     inverse_distance(d * d - 2.0 * d * c * x2 + x2 * x2, eps2) +
                     inverse_distance(d * d - 2.0 * d * c * dx + dx * dx, eps2);
  return p.q1 * p.q2 * sum;
}

}  // namespace

void ModelParams::validate() const {
  auto fail = [](const std::string& what) { throw ParameterOutOfRange(what); };
  if (!(theta >= 0.0 && theta <= kHalfPi + 1e-12)) fail("theta must lie in [0, pi/2]");
  if (!(d > 0.0) || !std::isfinite(d)) fail("distance d must be positive");
  if (!(omega1 > 0.0 && omega2 > 0.0)) fail("frequencies must be positive");
  if (!(m1 > 0.0 && m2 > 0.0)) fail("masses must be positive");
  if (!(hbar > 0.0)) fail("hbar must be positive");
  if (!(softening >= 0.0)) fail("softening must be non-negative");
  if (!std::isfinite(q1) || !std::isfinite(q2)) fail("charges must be finite");
}

double coulomb_potential(const ModelParams& p, double x1, double x2) {
  const double v = potential_or_nan(p, x1, x2);
  if (std::isnan(v)) {
    std::ostringstream msg;
    msg << "Coulomb denominator vanishes at x1 = " << x1 << ", x2 = " << x2 << " (theta = " << p.theta
        << ", d = " << p.d << ")";
    throw SingularConfiguration(msg.str());
  }
  return v;
}

ScaleFactors scale_factors(const ModelParams& p) {
  return {std::sqrt(p.hbar / (p.m1 * p.omega1)), std::sqrt(p.hbar / (p.m2 * p.omega2))};
}

RMatrix potential_on_grid(const ModelParams& p, const QuadratureGrid& grid) {
  p.validate();
  const auto [l1, l2] = scale_factors(p);
  const int n = grid.size();
  RMatrix field(n, n);
  std::vector<std::pair<int, int>> singular;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = potential_or_nan(p, l1 * grid.node(i), l2 * grid.node(j));
      if (std::isnan(v)) singular.emplace_back(i, j);
      field(i, j) = v;
    }
  }
  if (!singular.empty()) {
    throw SingularConfiguration(std::to_string(singular.size()) +
                                    " grid nodes hit a Coulomb singularity; set softening > 0",
                                std::move(singular));
  }
  return field;
}

RMatrix hamiltonian_dense(const ModelParams& p, const FockConfig& config, int quad_order) {
  p.validate();
  config.validate();
  const int dim = config.dim_per_mode;
  if (quad_order < 2 * dim) {
    throw ParameterOutOfRange("quadrature order must be at least 2 * dim_per_mode");
  }
  RMatrix h_mat = RMatrix::Zero(config.size(), config.size());
  for (int n1 = 0; n1 < dim; ++n1) {
    for (int n2 = 0; n2 < dim; ++n2) {
      h_mat(config.index(n1, n2), config.index(n1, n2)) = p.hbar * (p.omega1 * (n1 + 0.5) + p.omega2 * (n2 + 0.5));
    }
  }
  const double scale = p.q1 * p.q2;
  if (scale == 0.0) return h_mat;

  const auto [l1, l2] = scale_factors(p);
  const double d = p.d;
  const double c = std::cos(p.theta);
  const double eps2 = p.softening * p.softening;
  const double stretch = std::hypot(l1, l2);

  // Every Coulomb term has complex poles at distance sqrt(d^2 sin^2 + eps^2)
  // from the real axis of its own argument; the trapezoid step is chosen
  // relative to the closest pole in the integration variables.
  const double pole = std::hypot(d * std::sin(p.theta), p.softening) / std::max(stretch, std::max(l1, l2));
  if (!(pole > 0.0)) {
    throw SingularConfiguration("theta = 0 without softening makes every matrix element divergent");
  }
  const double step = std::min(kMaxTrapezoidStep, pole / kStepsPerPole);
  const int half_nodes = std::min(kMaxHalfNodes, static_cast<int>(std::ceil(kTrapezoidHalfWidth / step)));
  const double h = kTrapezoidHalfWidth / half_nodes;

  auto checked = [&](double arg, double where) {
    const double v = inverse_distance(arg, eps2);
    if (std::isnan(v)) {
      std::ostringstream msg;
      msg << "Coulomb denominator vanishes at quadrature coordinate " << where;
      throw SingularConfiguration(msg.str());
    }
    return v;
  };

  // pairs(k, n*dim + m) = psi_n(x_k) psi_m(x_k)
  auto pair_table = [dim](std::span<const double> xs) {
    const RMatrix psi = hermite_table(dim - 1, xs);
    RMatrix out(static_cast<Eigen::Index>(xs.size()), dim * dim);
    for (Eigen::Index k = 0; k < out.rows(); ++k) {
      for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) out(k, n * dim + m) = psi(n, k) * psi(m, k);
      }
    }
    return out;
  };

  std::vector<double> line(static_cast<std::size_t>(2 * half_nodes + 1));
  for (std::size_t k = 0; k < line.size(); ++k) line[k] = (static_cast<double>(k) - half_nodes) * h;
  const RMatrix line_pairs = pair_table(line);

  // Single-coordinate terms: one-dimensional trapezoid integrals.
  RVector f1(static_cast<Eigen::Index>(line.size())), f2(f1.size());
  for (std::size_t k = 0; k < line.size(); ++k) {
    const double x1 = l1 * line[k];
    const double x2 = l2 * line[k];
    f1[static_cast<Eigen::Index>(k)] = -h * checked(d * d + 2.0 * d * c * x1 + x1 * x1, x1);
    f2[static_cast<Eigen::Index>(k)] = -h * checked(d * d - 2.0 * d * c * x2 + x2 * x2, x2);
  }
  const RVector one_body1 = line_pairs.transpose() * f1;  // index n1*dim + m1
  const RVector one_body2 = line_pairs.transpose() * f2;

  // Relative term V(l2 x2 - l1 x1): rotate so that u runs along the singular
  // direction (trapezoid) and v across it (Gauss-Hermite, exact there since
  // the integrand is a polynomial times exp(-v^2)).
  const GaussHermiteRule rule = gauss_hermite(quad_order);
  const double cu = l1 / stretch;
  const double su = l2 / stretch;
  const Eigen::Map<const RVector> gh_weights(rule.function_weights.data(), quad_order);
  std::vector<double> x1s(static_cast<std::size_t>(quad_order)), x2s(x1s.size());
  RMatrix relative = RMatrix::Zero(dim * dim, dim * dim);  // ((n1,m1),(n2,m2))
  for (const double u : line) {
    const double w = stretch * u;
    const double weight = h * checked(d * d - 2.0 * d * c * w + w * w, w);
    for (int j = 0; j < quad_order; ++j) {
      x1s[static_cast<std::size_t>(j)] = -cu * u + su * rule.nodes[static_cast<std::size_t>(j)];
      x2s[static_cast<std::size_t>(j)] = su * u + cu * rule.nodes[static_cast<std::size_t>(j)];
    }
    const RMatrix a = pair_table(x1s);
    const RMatrix b = pair_table(x2s);
    relative.noalias() += weight * (a.transpose() * gh_weights.asDiagonal() * b);
  }

  RMatrix coulomb(config.size(), config.size());
  for (int n1 = 0; n1 < dim; ++n1) {
    for (int n2 = 0; n2 < dim; ++n2) {
      for (int m1 = 0; m1 < dim; ++m1) {
        for (int m2 = 0; m2 < dim; ++m2) {
          const int k1 = n1 * dim + m1;
          const int k2 = n2 * dim + m2;
          double v = relative(k1, k2);
          if (n2 == m2) v += one_body1[k1] + (n1 == m1 ? 1.0 / d : 0.0);
          if (n1 == m1) v += one_body2[k2];
          coulomb(config.index(n1, n2), config.index(m1, m2)) = scale * v;
        }
      }
    }
  }
  h_mat += 0.5 * (coulomb + coulomb.transpose());
  return h_mat;
}

double uncoupled_ground_energy(const ModelParams& p) { return 0.5 * p.hbar * (p.omega1 + p.omega2); }

RMatrix swap_parity_operator(const FockConfig& config) {
  const int dim = config.dim_per_mode;
  RMatrix op = RMatrix::Zero(config.size(), config.size());
  for (int n1 = 0; n1 < dim; ++n1) {
    for (int n2 = 0; n2 < dim; ++n2) {
      op(config.index(n2, n1), config.index(n1, n2)) = ((n1 + n2) % 2 == 0) ? 1.0 : -1.0;
    }
  }
  return op;
}

}  // namespace qdo
