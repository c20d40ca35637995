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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdo {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Two-mode amplitudes viewed as a matrix with entry (n1, n2).
using AmplitudeMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Mode { first = 1, second = 2 };

/// Truncation of the two-mode bosonic space.  Each mode keeps the levels
/// 0..dim_per_mode-1.
struct FockConfig {
  int dim_per_mode = 5;
  int modes = 2;

  void validate() const;
  int size() const { return dim_per_mode * dim_per_mode; }
  /// Lexicographic index of |n1, n2>.
  int index(int n1, int n2) const { return n1 * dim_per_mode + n2; }

  friend bool operator==(const FockConfig&, const FockConfig&) = default;
};

/// Amplitudes alpha_{n1 n2} of a truncated two-mode pure state.  Not
/// necessarily normalized: circuit outputs carry their norm as a diagnostic.
class FockVector {
 public:
  explicit FockVector(FockConfig config);
  FockVector(FockConfig config, CVector amplitudes);

  static FockVector vacuum(FockConfig config);
  static FockVector basis(FockConfig config, int n1, int n2);
  /// |first> (x) |second>, each given by its single-mode amplitudes.
  static FockVector product(const CVector& first, const CVector& second);

  const FockConfig& config() const { return config_; }
  int dim() const { return config_.dim_per_mode; }
  const CVector& amplitudes() const { return amplitudes_; }
  CVector& amplitudes() { return amplitudes_; }
  Complex amplitude(int n1, int n2) const {
    return amplitudes_[config_.index(n1, n2)];
  }
  AmplitudeMatrix as_matrix() const;

  double squared_norm() const { return amplitudes_.squaredNorm(); }
  double norm() const { return amplitudes_.norm(); }
  /// Throws DegenerateState when the norm is below 1e-12.
  FockVector normalized() const;

 private:
  FockConfig config_;
  CVector amplitudes_;
};

/// Hermitian, positive semi-definite, unit-trace single-mode density matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }
  Complex operator()(int n, int m) const { return entries_(n, m); }

  double trace() const { return entries_.trace().real(); }
  /// Ascending eigenvalues of the Hermitian part.
  RVector eigenvalues() const;
  /// Hermitian to tol, eigenvalues >= -tol, trace 1 to 1e-9.
  bool satisfies_invariants(double tol = 1e-10) const;

 private:
  CMatrix entries_;
};

/// Uniform grid of n_points nodes spanning [min, max], endpoints included.
class QuadratureGrid {
 public:
  QuadratureGrid() : QuadratureGrid(-6.0, 6.0, 500) {}
  QuadratureGrid(double min, double max, int n_points);

  double min() const { return min_; }
  double max() const { return max_; }
  int size() const { return n_points_; }
  double spacing() const { return spacing_; }
  double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::span<const double> nodes() const { return nodes_; }

  friend bool operator==(const QuadratureGrid& a, const QuadratureGrid& b) {
    return a.min_ == b.min_ && a.max_ == b.max_ && a.n_points_ == b.n_points_;
  }

 private:
  double min_;
  double max_;
  int n_points_;
  double spacing_;
  std::vector<double> nodes_;
};

// Hermite functions psi_n(x) = exp(-x^2/2) H_n(x) / sqrt(sqrt(pi) 2^n n!),
// evaluated by the three-term recurrence of the normalized functions.
double hermite_function(int n, double x);
/// psi_0(x) .. psi_max_level(x).
std::vector<double> hermite_functions(int max_level, double x);
/// Table with entry (n, i) = psi_n(xs[i]).
RMatrix hermite_table(int max_level, std::span<const double> xs);

/// <x1, x2 | state>.
Complex quadrature_amplitude(const FockVector& state, double x1, double x2);
/// <x1, x2 | state> on every grid node pair; entry (i, j) is (x1_i, x2_j).
CMatrix quadrature_amplitudes(const FockVector& state, const QuadratureGrid& grid);

/// |<x1, x2 | state>|^2 on the grid, rescaled so that sum(rho) dx^2 = 1.
RMatrix joint_position_density(const FockVector& state, const QuadratureGrid& grid);

/// Reduced density matrix of the kept mode.  The state is normalized first.
DensityMatrix partial_trace(const FockVector& state, Mode keep);

/// -Tr rho ln rho.  Eigenvalues below 1e-14 contribute nothing.
double von_neumann_entropy(const DensityMatrix& rho);

/// I(1:2) = 2 S(rho_1), valid for the pure total state.
double mutual_information(const FockVector& state);

/// |<a|b>|^2 of the normalized inputs.
double fidelity(const FockVector& a, const FockVector& b);

/// <n> of one mode in the normalized state.
double number_expectation(const FockVector& state, Mode mode);

struct QuadratureMoments {
  double mean1 = 0.0;    // <X1>
  double mean2 = 0.0;    // <X2>
  double second1 = 0.0;  // <X1^2>
  double second2 = 0.0;  // <X2^2>
  double cross = 0.0;    // <X1 X2>
};

/// Moments of a grid density normalized as sum(rho) dx^2 = 1.
QuadratureMoments density_moments(const RMatrix& density, const QuadratureGrid& grid);
QuadratureMoments quadrature_moments(const FockVector& state, const QuadratureGrid& grid);

/// Phase-space kernel W_{mn}(x, p) of the operator |m><n|, normalized so that
/// the kernel of |n><n| integrates to one.
Complex wigner_kernel(int m, int n, double x, double p);

/// W(x, p) = sum_{mn} rho_{mn} W_{mn}(x, p); entry (i, j) is (x_i, p_j).
RMatrix wigner_single_mode(const DensityMatrix& rho, const QuadratureGrid& x_grid,
                           const QuadratureGrid& p_grid);

/// Two-mode Wigner function restricted to (x1, p1, x2, p2) = (x, p, -x, -p).
RMatrix wigner_antisymmetric_slice(const FockVector& state, const QuadratureGrid& x_grid,
                                   const QuadratureGrid& p_grid);

}  // namespace qdo
