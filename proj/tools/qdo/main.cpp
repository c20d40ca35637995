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

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qdo/errors.hpp"

namespace {

using qdo::cli::Overrides;

void add_common_options(CLI::App& cmd, Overrides& o, std::string& engine) {
  cmd.add_option_function<std::string>("--config", [&o](const std::string& p) { o.config = p; },
                                       "TOML run configuration");
  cmd.add_option_function<double>("--theta", [&o](double v) { o.theta = v; }, "angle theta in radians");
  cmd.add_option_function<double>("--d", [&o](double v) { o.d = v; }, "internuclear distance");
  cmd.add_option_function<std::string>("--out", [&o](const std::string& p) { o.out = p; }, "output directory");
  cmd.add_option_function<std::uint64_t>("--seed", [&o](std::uint64_t v) { o.seed = v; }, "run seed");
  cmd.add_option("--engine", engine, "ground-state engine")->check(CLI::IsMember({"vqe", "oracle"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdo: variational ground states of Coulomb-coupled quantum Drude oscillators"};
  app.set_version_flag("--version", qdo::cli::kArtifactVersion);
  app.require_subcommand(1);

  Overrides o;
  std::string engine;
  std::vector<std::string> inputs;

  CLI::App* vqe = app.add_subcommand("vqe", "train the photonic circuit at one (theta, d) point");
  CLI::App* oracle = app.add_subcommand("oracle", "exact diagonalization at one (theta, d) point");
  CLI::App* sweep = app.add_subcommand("sweep", "binding curves over the configured theta and d grids");
  CLI::App* analyze = app.add_subcommand("analyze", "Morse fits, entropy smoothing and residual table");
  CLI::App* render = app.add_subcommand("render", "SVG figures from curve CSV or point JSON files");
  for (CLI::App* cmd : {vqe, oracle, sweep, analyze, render}) add_common_options(*cmd, o, engine);
  analyze->add_option("inputs", inputs, "curve CSV files")->required();
  render->add_option("inputs", inputs, "curve CSV or point JSON files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qdo::cli::kConfigError;
  }

  qdo::cli::RunConfig config;
  try {
    if (!engine.empty()) o.engine = qdo::parse_engine(engine);
    config = qdo::cli::resolve_config(o);
  } catch (const qdo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qdo::cli::kConfigError;
  }

  std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
  try {
    if (vqe->parsed()) return qdo::cli::cmd_point(config, qdo::Engine::vqe, o, std::cout, std::cerr);
    if (oracle->parsed()) return qdo::cli::cmd_point(config, qdo::Engine::oracle, o, std::cout, std::cerr);
    if (sweep->parsed()) return qdo::cli::cmd_sweep(config, std::cout, std::cerr);
    if (analyze->parsed()) return qdo::cli::cmd_analyze(config, paths, std::cout, std::cerr);
    if (render->parsed()) return qdo::cli::cmd_render(config, paths, std::cout, std::cerr);
  } catch (const qdo::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qdo::cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qdo::cli::kSolverFailure;
  }
  return qdo::cli::kConfigError;
}
