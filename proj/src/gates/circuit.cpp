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

#include "qdo/errors.hpp"
#include "qdo/gates.hpp"

namespace qdo {

int op_index_of_parameter(int param_index) {
  static constexpr std::array<int, LayerParams::kSize> kOpOf = {0, 0, 1, 2, 3, 4, 4,
                                                                5, 6, 6, 7, 7, 8, 9};
  if (param_index < 0 || param_index >= LayerParams::kSize) {
    throw ParameterOutOfRange("layer parameter index out of range");
  }
  return kOpOf[static_cast<std::size_t>(param_index)];
}

GateOp layer_op(const LayerParams& l, int op_index, int dim, GateOptions options) {
  using K = GateOp::Kind;
  switch (op_index) {
    case 0: return {K::beamsplitter, Mode::first, build_beamsplitter(l.bs1_theta, l.bs1_phi, dim)};
    case 1: return {K::rotation, Mode::first, build_rotation(l.rot1, dim)};
    case 2: return {K::squeeze, Mode::first, build_squeeze(l.squeeze1, dim, options)};
    case 3: return {K::squeeze, Mode::second, build_squeeze(l.squeeze2, dim, options)};
    case 4: return {K::beamsplitter, Mode::first, build_beamsplitter(l.bs2_theta, l.bs2_phi, dim)};
    case 5: return {K::rotation, Mode::first, build_rotation(l.rot2, dim)};
    case 6: return {K::displacement, Mode::first, build_displacement(l.disp1(), dim, options)};
    case 7: return {K::displacement, Mode::second, build_displacement(l.disp2(), dim, options)};
    case 8: return {K::kerr, Mode::first, build_kerr(l.kerr1, dim)};
    case 9: return {K::kerr, Mode::second, build_kerr(l.kerr2, dim)};
    default: throw ParameterOutOfRange("layer op index out of range");
  }
}

std::vector<GateOp> layer_ops(const LayerParams& layer, int dim, GateOptions options) {
  std::vector<GateOp> ops;
  ops.reserve(kOpsPerLayer);
  for (int k = 0; k < kOpsPerLayer; ++k) ops.push_back(layer_op(layer, k, dim, options));
  return ops;
}

void apply_op(const GateOp& op, FockVector& state) {
  const int dim = state.dim();
  CVector& amps = state.amplitudes();
  if (op.kind == GateOp::Kind::beamsplitter) {
    amps = op.matrix * amps;
    return;
  }
  Eigen::Map<AmplitudeMatrix> a(amps.data(), dim, dim);
  if (op.mode == Mode::first) {
    a = op.matrix * a;
  } else {
    a = a * op.matrix.transpose();
  }
}

FockVector apply_layer(const FockVector& state, const LayerParams& layer, GateOptions options) {
  FockVector out = state;
  for (const auto& op : layer_ops(layer, state.dim(), options)) apply_op(op, out);
  return out;
}

CircuitOutput apply_circuit(const CircuitParams& params, const FockConfig& config,
                            GateOptions options) {
  if (params.n_layers() < 1) throw ParameterOutOfRange("circuit needs at least one layer");
  FockVector state = FockVector::vacuum(config);
  for (const auto& layer : params.layers) state = apply_layer(state, layer, options);
  const double norm = state.norm();
  return {std::move(state), norm};
}

}  // namespace qdo
