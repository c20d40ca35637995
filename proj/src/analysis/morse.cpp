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
#include <limits>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/NonLinearOptimization>

#include "analysis/nelder_mead.hpp"
#include "qdo/analysis.hpp"
#include "qdo/errors.hpp"

namespace qdo {

namespace {

constexpr int kMinPoints = 10;
constexpr int kIterationCap = 500;
constexpr double kRelativeTolerance = 1e-6;
constexpr double kMinFitNorm = 0.95;

struct Samples {
  Eigen::VectorXd d;
  Eigen::VectorXd e;
};

double sum_of_squares(const Samples& s, const Eigen::Vector3d& p) {
  double sse = 0.0;
  for (Eigen::Index i = 0; i < s.d.size(); ++i) {
    const double r = morse_value(p[0], p[1], p[2], s.d[i]) - s.e[i];
    sse += r * r;
  }
  return sse;
}

Eigen::Vector3d initial_guess(const Samples& s) {
  Eigen::Index imin = 0;
  const double emin = s.e.minCoeff(&imin);
  const double depth = -emin;
  const double location = s.d[imin];
  // First distance beyond the minimum where the curve climbs back to half depth.
  double half = s.d[s.d.size() - 1];
  for (Eigen::Index i = imin + 1; i < s.d.size(); ++i) {
    if (s.e[i] >= -0.5 * depth) {
      const double t = (-0.5 * depth - s.e[i - 1]) / (s.e[i] - s.e[i - 1]);
      half = s.d[i - 1] + t * (s.d[i] - s.d[i - 1]);
      break;
    }
  }
  double scale = (half - location) / std::numbers::ln2;
  if (!(scale > 0.0)) scale = (s.d[s.d.size() - 1] - s.d[0]) / 4.0;
  return {depth, location, scale};
}

Eigen::MatrixXd jacobian(const Samples& s, const Eigen::Vector3d& p) {
  Eigen::MatrixXd jac(s.d.size(), 3);
  for (Eigen::Index i = 0; i < s.d.size(); ++i) {
    const double u = (s.d[i] - p[1]) / p[2];
    const double e1 = std::exp(-u);
    const double e2 = e1 * e1;
    jac(i, 0) = e2 - 2.0 * e1;
    jac(i, 1) = 2.0 * p[0] / p[2] * (e2 - e1);
    jac(i, 2) = 2.0 * p[0] * u / p[2] * (e2 - e1);
  }
  return jac;
}

Eigen::VectorXd residuals(const Samples& s, const Eigen::Vector3d& p) {
  Eigen::VectorXd r(s.d.size());
  for (Eigen::Index i = 0; i < s.d.size(); ++i) r[i] = morse_value(p[0], p[1], p[2], s.d[i]) - s.e[i];
  return r;
}

// Functor in the shape Eigen's Levenberg-Marquardt driver expects.
struct MorseResiduals {
  const Samples* samples;
  int inputs() const { return 3; }
  int values() const { return static_cast<int>(samples->d.size()); }
  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
    r = residuals(*samples, p);
    return 0;
  }
  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const {
    jac = jacobian(*samples, p);
    return 0;
  }
};

// Damped Gauss-Newton (Levenberg-Marquardt) polish.  Returns the relative
// size of the undamped Gauss-Newton step at the final point, which is the
// convergence measure.
double gauss_newton_polish(const Samples& s, Eigen::Vector3d& p) {
  MorseResiduals functor{&s};
  Eigen::LevenbergMarquardt<MorseResiduals> solver(functor);
  solver.parameters.maxfev = kIterationCap * 4;
  solver.parameters.xtol = 1e-15;
  solver.parameters.ftol = 1e-15;
  Eigen::VectorXd x = p;
  solver.minimize(x);
  if (x.allFinite() && x[0] > 0.0 && x[2] > 0.0 && sum_of_squares(s, x) <= sum_of_squares(s, p)) p = x;
  const Eigen::Vector3d delta = jacobian(s, p).colPivHouseholderQr().solve(-residuals(s, p));
  return delta.norm() / std::max(p.norm(), 1e-300);
}

}  // namespace

double morse_value(double depth, double location, double scale, double d) {
  const double e1 = std::exp(-(d - location) / scale);
  return depth * (e1 * e1 - 2.0 * e1);
}

double morse_value(const MorseFit& fit, double d) {
  return morse_value(fit.depth, fit.location, fit.scale, d);
}

MorseFit fit_morse(std::span<const double> d, std::span<const double> binding_energy) {
  if (d.size() != binding_energy.size()) throw FitFailed("distance and energy columns differ in length");
  if (static_cast<int>(d.size()) < kMinPoints) {
    throw FitFailed("Morse fit needs at least 10 points, got " + std::to_string(d.size()));
  }
  Samples s{Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size())),
            Eigen::Map<const Eigen::VectorXd>(binding_energy.data(),
                                              static_cast<Eigen::Index>(binding_energy.size()))};
  if (!s.d.allFinite() || !s.e.allFinite()) throw FitFailed("curve contains non-finite values");
  if (!(s.e.minCoeff() < 0.0)) throw FitFailed("binding curve has no negative minimum");

  Eigen::Vector3d p = initial_guess(s);
  auto objective = [&](const Eigen::VectorXd& q) {
    if (!(q[0] > 0.0 && q[2] > 0.0)) return std::numeric_limits<double>::infinity();
    return sum_of_squares(s, q);
  };
  const Eigen::Vector3d step(0.1 * p[0], 0.05 * std::max(std::abs(p[1]), 0.1), 0.1 * p[2]);
  const auto simplex = detail::nelder_mead(objective, p, step, kIterationCap, 1e-20);
  p = simplex.x;

  const double change = gauss_newton_polish(s, p);

  MorseFit fit;
  fit.depth = p[0];
  fit.location = p[1];
  fit.scale = p[2];
  fit.residual_l2 = std::sqrt(sum_of_squares(s, p));
  fit.converged = change <= kRelativeTolerance;
  fit.points_used = static_cast<int>(d.size());
  return fit;
}

MorseFit fit_morse(const BindingCurve& curve) {
  std::vector<double> d;
  std::vector<double> e;
  bool started = false;
  for (const auto& point : curve.points) {
    const bool usable = point.ok() && std::isfinite(point.binding_energy) && point.norm >= kMinFitNorm;
    if (!started && !usable) continue;
    started = true;
    if (!point.ok() || !std::isfinite(point.binding_energy)) continue;
    d.push_back(point.d);
    e.push_back(point.binding_energy);
  }
  return fit_morse(d, e);
}

double inflection_point(const MorseFit& fit) { return fit.location + std::numbers::ln2 * fit.scale; }

}  // namespace qdo
