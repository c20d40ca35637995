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
#include "qdo/fock.hpp"

namespace qdo {

void FockConfig::validate() const {
  if (dim_per_mode < 2) {
    throw ParameterOutOfRange("dim_per_mode must be at least 2, got " +
                              std::to_string(dim_per_mode));
  }
  if (modes != 2) {
    throw ParameterOutOfRange("only two-mode states are supported, got modes = " +
                              std::to_string(modes));
  }
}

FockVector::FockVector(FockConfig config)
    : config_(config), amplitudes_(CVector::Zero(config.size())) {
  config_.validate();
}

FockVector::FockVector(FockConfig config, CVector amplitudes)
    : config_(config), amplitudes_(std::move(amplitudes)) {
  config_.validate();
  if (amplitudes_.size() != config_.size()) {
    throw ParameterOutOfRange("amplitude vector has length " +
                              std::to_string(amplitudes_.size()) + ", expected " +
                              std::to_string(config_.size()));
  }
}

FockVector FockVector::vacuum(FockConfig config) { return basis(config, 0, 0); }

FockVector FockVector::basis(FockConfig config, int n1, int n2) {
  FockVector state(config);
  if (n1 < 0 || n2 < 0 || n1 >= config.dim_per_mode || n2 >= config.dim_per_mode) {
    throw ParameterOutOfRange("basis level outside the truncated space");
  }
  state.amplitudes_[config.index(n1, n2)] = 1.0;
  return state;
}

FockVector FockVector::product(const CVector& first, const CVector& second) {
  if (first.size() != second.size()) {
    throw ParameterOutOfRange("product factors must share the per-mode dimension");
  }
  const FockConfig config{static_cast<int>(first.size()), 2};
  CVector amps(config.size());
  for (int n1 = 0; n1 < config.dim_per_mode; ++n1) {
    for (int n2 = 0; n2 < config.dim_per_mode; ++n2) {
      amps[config.index(n1, n2)] = first[n1] * second[n2];
    }
  }
  return FockVector(config, std::move(amps));
}

AmplitudeMatrix FockVector::as_matrix() const {
  return Eigen::Map<const AmplitudeMatrix>(amplitudes_.data(), dim(), dim());
}

FockVector FockVector::normalized() const {
  const double n = norm();
  if (!(n >= 1e-12)) throw DegenerateState("cannot normalize a state of norm " + std::to_string(n));
  return FockVector(config_, amplitudes_ / n);
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw ParameterOutOfRange("density matrix must be square and non-empty");
  }
}

RVector DensityMatrix::eigenvalues() const {
  const CMatrix hermitian = 0.5 * (entries_ + entries_.adjoint());
  return Eigen::SelfAdjointEigenSolver<CMatrix>(hermitian, Eigen::EigenvaluesOnly).eigenvalues();
}

bool DensityMatrix::satisfies_invariants(double tol) const {
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (eigenvalues().minCoeff() < -tol) return false;
  return std::abs(trace() - 1.0) <= 1e-9;
}

QuadratureGrid::QuadratureGrid(double min, double max, int n_points)
    : min_(min), max_(max), n_points_(n_points) {
  if (!(min < max)) throw ParameterOutOfRange("quadrature grid needs min < max");
  if (n_points < 2) throw ParameterOutOfRange("quadrature grid needs at least two points");
  spacing_ = (max - min) / static_cast<double>(n_points - 1);
  nodes_.resize(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) nodes_[static_cast<std::size_t>(i)] = min + i * spacing_;
  nodes_.back() = max;
}

Complex quadrature_amplitude(const FockVector& state, double x1, double x2) {
  const int dim = state.dim();
  const auto psi1 = hermite_functions(dim - 1, x1);
  const auto psi2 = hermite_functions(dim - 1, x2);
  Complex sum = 0.0;
  for (int n1 = 0; n1 < dim; ++n1) {
    for (int n2 = 0; n2 < dim; ++n2) sum += state.amplitude(n1, n2) * psi1[n1] * psi2[n2];
  }
  return sum;
}

CMatrix quadrature_amplitudes(const FockVector& state, const QuadratureGrid& grid) {
  const RMatrix table = hermite_table(state.dim() - 1, grid.nodes());
  const CMatrix ctable = table.cast<Complex>();
  return ctable.transpose() * state.as_matrix() * ctable;
}

RMatrix joint_position_density(const FockVector& state, const QuadratureGrid& grid) {
  if (!(state.norm() >= 1e-12)) throw DegenerateState("joint density of a zero-norm state");
  RMatrix density = quadrature_amplitudes(state, grid).cwiseAbs2();
  const double dx2 = grid.spacing() * grid.spacing();
  const double mass = density.sum() * dx2;
  if (!(mass > 0.0)) throw DegenerateState("state has no weight on the quadrature grid");
  density /= mass;
  return density;
}

QuadratureMoments density_moments(const RMatrix& density, const QuadratureGrid& grid) {
  const Eigen::Map<const RVector> x(grid.nodes().data(), grid.size());
  const double dx2 = grid.spacing() * grid.spacing();
  const RVector row_mass = density.rowwise().sum() * dx2;  // marginal of X1
  const RVector col_mass = density.colwise().sum().transpose() * dx2;
  QuadratureMoments m;
  m.mean1 = row_mass.dot(x);
  m.mean2 = col_mass.dot(x);
  m.second1 = row_mass.dot(x.cwiseAbs2());
  m.second2 = col_mass.dot(x.cwiseAbs2());
  m.cross = x.dot(density * x) * dx2;
  return m;
}

QuadratureMoments quadrature_moments(const FockVector& state, const QuadratureGrid& grid) {
  return density_moments(joint_position_density(state, grid), grid);
}

}  // namespace qdo
