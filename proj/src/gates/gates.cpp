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

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qdo/errors.hpp"
#include "qdo/gates.hpp"

namespace qdo {

namespace {

constexpr double kMaxSqueeze = 5.0;
constexpr double kMaxDisplacement = 4.0;
constexpr int kPadding = 4;

void check_dim(int dim) {
  if (dim < 2) throw ParameterOutOfRange("gate dimension must be at least 2");
}

CMatrix exponentiate(const CMatrix& generator, int dim, GateOptions options) {
  const CMatrix u = generator.exp();
  if (!options.padded) return u;
  return u.topLeftCorner(dim, dim);
}

}  // namespace

std::array<double, LayerParams::kSize> LayerParams::to_array() const {
  return {bs1_theta, bs1_phi, rot1,      squeeze1,    squeeze2,  bs2_theta,   bs2_phi,
          rot2,      disp1_mag, disp1_phase, disp2_mag, disp2_phase, kerr1,   kerr2};
}

LayerParams LayerParams::from_array(std::span<const double, kSize> v) {
  return LayerParams{v[0], v[1], v[2], v[3],  v[4],  v[5],  v[6],
                     v[7], v[8], v[9], v[10], v[11], v[12], v[13]};
}

std::vector<double> CircuitParams::flatten() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (const auto& layer : layers) {
    const auto values = layer.to_array();
    out.insert(out.end(), values.begin(), values.end());
  }
  return out;
}

CircuitParams CircuitParams::unflatten(std::span<const double> values) {
  if (values.empty() || values.size() % LayerParams::kSize != 0) {
    throw ParameterOutOfRange("parameter vector length " + std::to_string(values.size()) +
                              " is not a positive multiple of 14");
  }
  CircuitParams params;
  for (std::size_t offset = 0; offset < values.size(); offset += LayerParams::kSize) {
    params.layers.push_back(
        LayerParams::from_array(values.subspan(offset).first<LayerParams::kSize>()));
  }
  return params;
}

CMatrix annihilation_operator(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMatrix build_rotation(double phi, int dim) {
  check_dim(dim);
  CVector diag(dim);
  for (int n = 0; n < dim; ++n) diag[n] = std::polar(1.0, phi * n);
  return diag.asDiagonal();
}

CMatrix build_kerr(double kappa, int dim) {
  check_dim(dim);
  CVector diag(dim);
  for (int n = 0; n < dim; ++n) diag[n] = std::polar(1.0, kappa * n * n);
  return diag.asDiagonal();
}

CMatrix build_squeeze(double r, int dim, GateOptions options) {
  check_dim(dim);
  if (!std::isfinite(r) || std::abs(r) > kMaxSqueeze) {
    throw ParameterOutOfRange("squeeze magnitude " + std::to_string(r) + " exceeds 5");
  }
  const int build_dim = options.padded ? dim + kPadding : dim;
  const CMatrix a = annihilation_operator(build_dim);
  const CMatrix a2 = a * a;
  return exponentiate(0.5 * r * (a2 - a2.adjoint()), dim, options);
}

CMatrix build_displacement(Complex alpha, int dim, GateOptions options) {
  check_dim(dim);
  if (!std::isfinite(std::abs(alpha)) || std::abs(alpha) > kMaxDisplacement) {
    throw ParameterOutOfRange("displacement magnitude " + std::to_string(std::abs(alpha)) +
                              " exceeds 4");
  }
  const int build_dim = options.padded ? dim + kPadding : dim;
  const CMatrix a = annihilation_operator(build_dim);
  return exponentiate(alpha * a.adjoint() - std::conj(alpha) * a, dim, options);
}

CMatrix beamsplitter_generator(double theta, double phi, int dim) {
  check_dim(dim);
  const CMatrix a = annihilation_operator(dim);
  const CMatrix ad = a.adjoint();
  const Complex e = std::polar(1.0, phi);
  return theta * (e * CMatrix(Eigen::kroneckerProduct(a, ad)) -
                  std::conj(e) * CMatrix(Eigen::kroneckerProduct(ad, a)));
}

CMatrix build_beamsplitter(double theta, double phi, int dim) {
  // The generator conserves n1 + n2, so it is exponentiated block by block.
  const CMatrix generator = beamsplitter_generator(theta, phi, dim);
  CMatrix u = CMatrix::Zero(dim * dim, dim * dim);
  std::vector<int> block;
  for (int total = 0; total <= 2 * (dim - 1); ++total) {
    block.clear();
    for (int n1 = std::max(0, total - dim + 1); n1 <= std::min(total, dim - 1); ++n1) {
      block.push_back(n1 * dim + (total - n1));
    }
    const auto size = static_cast<Eigen::Index>(block.size());
    CMatrix sub(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) sub(i, j) = generator(block[i], block[j]);
    }
    const CMatrix sub_exp = sub.exp();
    for (Eigen::Index i = 0; i < size; ++i) {
      for (Eigen::Index j = 0; j < size; ++j) u(block[i], block[j]) = sub_exp(i, j);
    }
  }
  return u;
}

}  // namespace qdo
