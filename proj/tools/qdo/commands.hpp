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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "run_config.hpp"

namespace qdo::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kSolverFailure = 2,
  kTooManyFailures = 3,
};

/// Command-line overrides applied on top of the configuration file.
struct Overrides {
  std::optional<std::filesystem::path> config;
  std::optional<double> theta;
  std::optional<double> d;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<Engine> engine;
};

RunConfig resolve_config(const Overrides& overrides);

/// One ground-state solve written as a point record.  `engine` selects vqe or
/// oracle; theta and d come from the overrides (theta may come from a
/// single-valued config).
int cmd_point(const RunConfig& config, Engine engine, const Overrides& overrides, std::ostream& out,
              std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_analyze(const RunConfig& config, const std::vector<std::filesystem::path>& inputs, std::ostream& out,
                std::ostream& err);
int cmd_render(const RunConfig& config, const std::vector<std::filesystem::path>& inputs, std::ostream& out,
               std::ostream& err);

/// Fraction of ok rows at or above which a sweep exits successfully.
inline constexpr double kMinOkFraction = 0.9;

}  // namespace qdo::cli
