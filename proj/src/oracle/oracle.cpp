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

#include "qdo/errors.hpp"
#include "qdo/oracle.hpp"

namespace qdo {

ExactGroundState ground_state_exact(const ModelParams& p, const FockConfig& config, int quad_order) {
  const RMatrix h = hamiltonian_dense(p, config, quad_order);
  const Eigen::SelfAdjointEigenSolver<RMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");

  CVector v = solver.eigenvectors().col(0).cast<Complex>();
  Eigen::Index largest = 0;
  v.cwiseAbs().maxCoeff(&largest);
  v *= std::abs(v[largest]) / v[largest];
  v /= v.norm();
  return {solver.eigenvalues()[0], FockVector(config, std::move(v))};
}

RVector spectrum_exact(const ModelParams& p, const FockConfig& config, int quad_order, int k) {
  if (k < 1 || k > config.size()) {
    throw ParameterOutOfRange("requested eigenvalue count must lie in [1, dim^2]");
  }
  const RMatrix h = hamiltonian_dense(p, config, quad_order);
  const RVector all = Eigen::SelfAdjointEigenSolver<RMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
  return all.head(k);
}

}  // namespace qdo
