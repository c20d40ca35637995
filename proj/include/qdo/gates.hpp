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

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "qdo/fock.hpp"

namespace qdo {

/// Gate parameters of one ansatz layer.  The flattened order is the field
/// order below (14 reals).
struct LayerParams {
  double bs1_theta = 0.0;
  double bs1_phi = 0.0;
  double rot1 = 0.0;
  double squeeze1 = 0.0;
  double squeeze2 = 0.0;
  double bs2_theta = 0.0;
  double bs2_phi = 0.0;
  double rot2 = 0.0;
  double disp1_mag = 0.0;
  double disp1_phase = 0.0;
  double disp2_mag = 0.0;
  double disp2_phase = 0.0;
  double kerr1 = 0.0;
  double kerr2 = 0.0;

  static constexpr int kSize = 14;

  // Magnitudes may go negative during optimization, so no std::polar here.
  Complex disp1() const { return disp1_mag * Complex(std::cos(disp1_phase), std::sin(disp1_phase)); }
  Complex disp2() const { return disp2_mag * Complex(std::cos(disp2_phase), std::sin(disp2_phase)); }

  std::array<double, kSize> to_array() const;
  static LayerParams from_array(std::span<const double, kSize> values);

  friend bool operator==(const LayerParams&, const LayerParams&) = default;
};

/// Parameters of the full layered circuit, flattened layer-major.
struct CircuitParams {
  std::vector<LayerParams> layers;

  CircuitParams() = default;
  explicit CircuitParams(int n_layers) : layers(static_cast<std::size_t>(n_layers)) {}

  int n_layers() const { return static_cast<int>(layers.size()); }
  int size() const { return n_layers() * LayerParams::kSize; }
  std::vector<double> flatten() const;
  static CircuitParams unflatten(std::span<const double> values);

  friend bool operator==(const CircuitParams&, const CircuitParams&) = default;
};

struct GateOptions {
  /// Build at dim + 4 and project back onto the truncated space.
  bool padded = false;
};

// Single-mode operators are dim x dim, two-mode operators dim^2 x dim^2 in the
// lexicographic (n1, n2) basis.
CMatrix annihilation_operator(int dim);
CMatrix build_rotation(double phi, int dim);
CMatrix build_kerr(double kappa, int dim);
/// exp((r/2)(a^2 - a^dag^2)); |r| <= 5.
CMatrix build_squeeze(double r, int dim, GateOptions options = {});
/// exp(alpha a^dag - conj(alpha) a); |alpha| <= 4.
CMatrix build_displacement(Complex alpha, int dim, GateOptions options = {});
/// exp(theta (e^{i phi} a1 a2^dag - e^{-i phi} a1^dag a2)).
CMatrix build_beamsplitter(double theta, double phi, int dim);
/// Generator of build_beamsplitter as a dense dim^2 x dim^2 matrix.
CMatrix beamsplitter_generator(double theta, double phi, int dim);

/// One gate of the layered circuit, ready to be applied.
struct GateOp {
  enum class Kind { beamsplitter, rotation, squeeze, displacement, kerr };
  Kind kind;
  Mode mode;  // ignored for beamsplitters
  CMatrix matrix;
};

/// Number of GateOps per layer.
inline constexpr int kOpsPerLayer = 10;

/// Gate sequence of one layer, in application order.
std::vector<GateOp> layer_ops(const LayerParams& layer, int dim, GateOptions options = {});
/// Rebuilds the single op of a layer that a parameter feeds.
GateOp layer_op(const LayerParams& layer, int op_index, int dim, GateOptions options = {});
/// Index within layer_ops() of the op that consumes parameter `param_index`.
int op_index_of_parameter(int param_index);

/// Applies op in place to a two-mode state.
void apply_op(const GateOp& op, FockVector& state);

FockVector apply_layer(const FockVector& state, const LayerParams& layer, GateOptions options = {});

struct CircuitOutput {
  FockVector state;  // unnormalized
  double norm;
};

/// U(params) |0, 0>.
CircuitOutput apply_circuit(const CircuitParams& params, const FockConfig& config,
                            GateOptions options = {});

}  // namespace qdo
