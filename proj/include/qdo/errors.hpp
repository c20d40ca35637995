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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qdo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state whose norm is too small to normalize, or a distribution with a
/// vanishing variance.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

/// A gate or ansatz parameter outside its admissible range.
class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A Coulomb denominator collapsed to zero.  When raised from a grid
/// evaluation the offending (i, j) node indices are attached.
class SingularConfiguration : public Error {
 public:
  explicit SingularConfiguration(const std::string& what,
                                 std::vector<std::pair<int, int>> nodes = {})
      : Error(what), nodes_(std::move(nodes)) {}

  const std::vector<std::pair<int, int>>& nodes() const { return nodes_; }

 private:
  std::vector<std::pair<int, int>> nodes_;
};

/// The optimizer produced a NaN or infinite cost.
class NonFinite : public Error {
 public:
  NonFinite(const std::string& what, int step, std::vector<double> params)
      : Error(what), step_(step), params_(std::move(params)) {}

  int step() const { return step_; }
  const std::vector<double>& params() const { return params_; }

 private:
  int step_;
  std::vector<double> params_;
};

/// A Morse fit could not be set up (no negative minimum, too few points).
class FitFailed : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdo
