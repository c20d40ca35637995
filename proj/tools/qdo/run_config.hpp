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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdo/analysis.hpp"
#include "qdo/model.hpp"
#include "qdo/vqe.hpp"

namespace qdo::cli {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Everything a run needs, parsed from one TOML document.  Every field has a
/// default, so an empty document is a valid configuration.
struct RunConfig {
  // [model]
  std::vector<double> thetas{0.58};
  double d_min = 0.3;  // the distance grid is (d_min, d_max]
  double d_max = 3.5;
  int d_count = 40;
  ModelParams model;  // theta and d are overwritten per point

  // [vqe]
  VqeConfig vqe;

  // [oracle]
  int quad_order = 80;

  // [analysis]
  double bandwidth = 0.12;
  bool morse = true;
  bool cat_fit = true;
  CatSearchBox cat_box;

  // [output]
  std::filesystem::path directory = "out";
  std::vector<std::string> formats{"csv", "json", "svg"};
  bool write_states = true;

  // top level
  std::uint64_t seed = 0;
  Engine engine = Engine::oracle;
  int threads = 0;  // 0: available cores; QDO_THREADS overrides

  std::vector<double> distances() const;
  bool wants(std::string_view format) const;
  void validate() const;
};

/// Parses a TOML document; throws ConfigError on syntax errors, unknown keys
/// and wrongly typed or out-of-range values.
RunConfig parse_config(std::string_view toml_text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Snapshot of every field, suitable for the run manifest.
nlohmann::ordered_json to_json(const RunConfig& config);

/// Worker count after applying the QDO_THREADS environment override.
int effective_threads(const RunConfig& config);

}  // namespace qdo::cli
