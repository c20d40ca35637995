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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdo/fock.hpp"
#include "qdo/model.hpp"
#include "qdo/vqe.hpp"

namespace qdo {

enum class Engine { vqe, oracle };

const char* engine_name(Engine engine);
Engine parse_engine(const std::string& name);

/// One row of a binding curve.  `status` is "ok" or the name of the error
/// that stopped the point; `message` carries its text.
struct BindingPoint {
  double d = 0.0;
  double binding_energy = 0.0;  // energy - uncoupled ground energy
  double energy = 0.0;
  double norm = 0.0;
  double entropy = 0.0;  // entanglement entropy S(rho_1)
  double correlation = 0.0;
  Engine source = Engine::oracle;
  std::string status = "ok";
  std::string message;
  int steps = 0;
  bool converged = true;
  std::optional<FockVector> state;

  bool ok() const { return status == "ok"; }
};

struct BindingCurve {
  double theta = 0.0;
  std::vector<BindingPoint> points;  // strictly increasing d
};

struct SweepOptions {
  Engine engine = Engine::oracle;
  int quad_order = 80;
  bool keep_states = true;
  /// Worker count for independent points; 0 uses the hardware concurrency.
  int threads = 0;
};

/// `count` points d_min + k (d_max - d_min) / count, k = 1..count, i.e. the
/// half-open interval (d_min, d_max].
std::vector<double> distance_grid(double d_min, double d_max, int count);

/// Per-run generator seed for the point (theta, d).
std::uint64_t point_seed(std::uint64_t seed, double theta, double d);

/// Ground state at every distance.  Oracle points run in parallel; VQE
/// points run largest-d first, each warm-started from the previous one.
/// Per-point failures are recorded in the row and never abort the sweep.
BindingCurve sweep(double theta, std::span<const double> d_grid, const ModelParams& defaults,
                   const VqeConfig& cfg, const SweepOptions& options = {});

struct MorseFit {
  double depth = 0.0;     // E_b
  double location = 0.0;  // d_b
  double scale = 0.0;     // s
  double residual_l2 = 0.0;
  bool converged = false;
  int points_used = 0;
};

/// E_b (e^{-2(d-d_b)/s} - 2 e^{-(d-d_b)/s}).
double morse_value(double depth, double location, double scale, double d);
double morse_value(const MorseFit& fit, double d);

/// Nonlinear least-squares Morse fit: simplex descent followed by a
/// Gauss-Newton polish.  Throws FitFailed without a negative minimum or
/// with fewer than 10 usable points.
MorseFit fit_morse(std::span<const double> d, std::span<const double> binding_energy);
/// Fits the ok rows of a curve, dropping every row below the first one that
/// is finite with norm >= 0.95.
MorseFit fit_morse(const BindingCurve& curve);

/// d_b + ln(2) s.
double inflection_point(const MorseFit& fit);

/// Pearson correlation of X1 and X2 under the grid density.  Throws
/// DegenerateState when a variance is below 1e-12.
double correlation_coefficient(const FockVector& state, const QuadratureGrid& grid);
double correlation_coefficient(const QuadratureMoments& m);

/// Nadaraya-Watson smooth with a Gaussian kernel reflected at both ends.
std::vector<double> kernel_smooth(std::span<const double> x, std::span<const double> y, double bandwidth);

struct EntropyProfile {
  std::vector<double> d;
  std::vector<double> entropy;
  std::vector<double> smoothed;
};

/// Entanglement entropy (half the mutual information) of every ok row with
/// its kernel smooth.
EntropyProfile entropy_profile(const BindingCurve& curve, double bandwidth = 0.12);

/// Truncated coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!).
CVector coherent_amplitudes(Complex alpha, int dim);

/// (|0,0> + |alpha,-alpha>) / N with truncated coherent components; |alpha| <= 3.
FockVector cat_state(Complex alpha, const FockConfig& config);

struct CatSearchBox {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
  double step = 0.1;
};

struct CatFit {
  Complex alpha;
  double fidelity = 0.0;
};

/// Maximizes fidelity(state, cat_state(alpha)) by a coarse grid search over
/// the box followed by simplex refinement.
CatFit fit_cat(const FockVector& state, const FockConfig& config, const CatSearchBox& box = {});

/// Density along the anti-diagonal x2 = -x1 of a square grid field.
std::vector<double> antidiagonal_profile(const RMatrix& density);

struct Bimodality {
  bool bimodal = false;
  double dip_fraction = 0.0;  // 1 - (valley / smaller peak) of the best pair
  int first_peak = -1;
  int second_peak = -1;
};

/// Two local maxima separated by a valley at least `min_dip` below the
/// smaller one.  Maxima under 1e-3 of the global maximum are ignored.
Bimodality detect_bimodality(std::span<const double> profile, double min_dip = 0.1);

}  // namespace qdo
