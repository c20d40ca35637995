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
#include <numbers>

#include "qdo/fock.hpp"

namespace qdo {

namespace {

// lgamma-free sqrt(n!/m!) for n <= m.
double factorial_ratio_sqrt(int n, int m) {
  double r = 1.0;
  for (int k = n + 1; k <= m; ++k) r /= std::sqrt(static_cast<double>(k));
  return r;
}

// All kernels W_{mn}(x, p) for m, n < dim.
CMatrix kernel_matrix(int dim, double x, double p) {
  CMatrix k(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n <= m; ++n) {
      k(m, n) = wigner_kernel(m, n, x, p);
      if (n != m) k(n, m) = std::conj(k(m, n));
    }
  }
  return k;
}

}  // namespace

Complex wigner_kernel(int m, int n, double x, double p) {
  if (m < n) return std::conj(wigner_kernel(n, m, x, p));
  const Complex beta = std::numbers::sqrt2 * Complex(x, -p);
  const double r2 = 2.0 * (x * x + p * p);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double radial = sign / std::numbers::pi * factorial_ratio_sqrt(n, m) * std::exp(-0.5 * r2) *
                        std::assoc_laguerre(static_cast<unsigned>(n), static_cast<unsigned>(m - n), r2);
  return radial * std::pow(beta, m - n);
}

RMatrix wigner_single_mode(const DensityMatrix& rho, const QuadratureGrid& x_grid,
                           const QuadratureGrid& p_grid) {
  const int dim = rho.dim();
  RMatrix w(x_grid.size(), p_grid.size());
  for (int i = 0; i < x_grid.size(); ++i) {
    for (int j = 0; j < p_grid.size(); ++j) {
      const CMatrix k = kernel_matrix(dim, x_grid.node(i), p_grid.node(j));
      // sum_{mn} rho_{mn} K_{mn}
      w(i, j) = (rho.entries().cwiseProduct(k)).sum().real();
    }
  }
  return w;
}

RMatrix wigner_antisymmetric_slice(const FockVector& state, const QuadratureGrid& x_grid,
                                   const QuadratureGrid& p_grid) {
  const int dim = state.dim();
  const AmplitudeMatrix a = state.normalized().as_matrix();
  RMatrix w(x_grid.size(), p_grid.size());
  for (int i = 0; i < x_grid.size(); ++i) {
    for (int j = 0; j < p_grid.size(); ++j) {
      const double x = x_grid.node(i);
      const double p = p_grid.node(j);
      const CMatrix k1 = kernel_matrix(dim, x, p);
      const CMatrix k2 = kernel_matrix(dim, -x, -p);
      // sum a_{m1 m2} conj(a_{n1 n2}) K_{m1 n1} K_{m2 n2}
      const CMatrix inner = a * k2 * a.adjoint();
      w(i, j) = (k1.cwiseProduct(inner)).sum().real();
    }
  }
  return w;
}

}  // namespace qdo
