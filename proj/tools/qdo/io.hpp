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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdo/analysis.hpp"
#include "run_config.hpp"

namespace qdo::cli {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
/// Inverse of format_double; throws ConfigError on malformed text.
double parse_double(std::string_view text);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never observe a partially written file.
void write_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

inline constexpr std::string_view kCurveHeader = "d,E_b,energy,norm,entropy,correlation,status";

/// One CSV row of a binding curve.
struct CurveRow {
  double d = 0.0;
  double binding_energy = 0.0;
  double energy = 0.0;
  double norm = 0.0;
  double entropy = 0.0;
  double correlation = 0.0;
  std::string status = "ok";

  friend bool operator==(const CurveRow&, const CurveRow&) = default;
};

std::vector<CurveRow> curve_rows(const BindingCurve& curve);
std::string write_curve_csv(const std::vector<CurveRow>& rows);
/// Throws ConfigError when the header or a row is malformed.
std::vector<CurveRow> parse_curve_csv(std::string_view text);
/// Rebuilds the per-point table (without states) for downstream analysis.
BindingCurve to_curve(double theta, const std::vector<CurveRow>& rows);

/// File-name fragment for an angle or distance, e.g. 0.58 -> "0.58".
std::string tag(double value);
/// Recovers theta from a file stem of the form "..theta_<value>..".
std::optional<double> theta_from_stem(std::string_view stem);

/// Point record written by the vqe and oracle commands.
nlohmann::ordered_json point_json(double theta, const BindingPoint& point, const std::optional<VqeResult>& vqe,
                                  const std::optional<CatFit>& cat, bool with_state);
/// Amplitudes as [re, im] pairs in row-major (n1, n2) order.
nlohmann::ordered_json state_json(const FockVector& state);
FockVector state_from_json(const nlohmann::json& amplitudes);

/// Run manifest, owned by the command coordinator.
class Manifest {
 public:
  Manifest(std::filesystem::path directory, std::string command, const RunConfig& config);

  void add_point(double theta, const BindingPoint& point);
  void add_note(std::string key, nlohmann::ordered_json value);
  /// Rewrites manifest.json; `finished` stamps the end time.
  void write(bool finished);

 private:
  std::filesystem::path path_;
  nlohmann::ordered_json doc_;
};

std::string utc_timestamp();

}  // namespace qdo::cli
