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

#include "qdo/fock.hpp"
#include "qdo/model.hpp"

namespace qdo {

struct ExactGroundState {
  double energy;
  FockVector state;  // normalized, largest-magnitude amplitude real positive
};

/// Lowest eigenpair of hamiltonian_dense by full Hermitian diagonalization.
ExactGroundState ground_state_exact(const ModelParams& p, const FockConfig& config,
                                    int quad_order = 80);

/// The k lowest eigenvalues of hamiltonian_dense, ascending.
RVector spectrum_exact(const ModelParams& p, const FockConfig& config, int quad_order, int k);

}  // namespace qdo
