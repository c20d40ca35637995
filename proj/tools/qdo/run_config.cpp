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

#include "run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <toml.hpp>

#include "qdo/errors.hpp"

namespace qdo::cli {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw ConfigError(what); }

/// Checks a table's keys against the allowed set.
void require_known_keys(const toml::table& table, std::string_view where,
                        const std::set<std::string_view>& allowed) {
  for (const auto& [key, node] : table) {
    (void)node;
    if (!allowed.contains(key.str())) {
      config_error("unknown key '" + std::string(key.str()) + "' in " + std::string(where));
    }
  }
}

const toml::table* subtable(const toml::table& root, std::string_view name) {
  const toml::node* node = root.get(name);
  if (node == nullptr) return nullptr;
  if (!node->is_table()) config_error("'" + std::string(name) + "' must be a table");
  return node->as_table();
}

double as_double(const toml::node& node, std::string_view key) {
  if (auto v = node.value_exact<double>()) return *v;
  if (auto v = node.value_exact<std::int64_t>()) return static_cast<double>(*v);
  config_error("'" + std::string(key) + "' must be a number");
}

void read(const toml::table& t, std::string_view key, double& out) {
  if (const toml::node* n = t.get(key)) out = as_double(*n, key);
}

void read(const toml::table& t, std::string_view key, int& out) {
  if (const toml::node* n = t.get(key)) {
    const auto v = n->value_exact<std::int64_t>();
    if (!v) config_error("'" + std::string(key) + "' must be an integer");
    out = static_cast<int>(*v);
  }
}

void read(const toml::table& t, std::string_view key, bool& out) {
  if (const toml::node* n = t.get(key)) {
    const auto v = n->value_exact<bool>();
    if (!v) config_error("'" + std::string(key) + "' must be a boolean");
    out = *v;
  }
}

void read(const toml::table& t, std::string_view key, std::string& out) {
  if (const toml::node* n = t.get(key)) {
    const auto v = n->value_exact<std::string>();
    if (!v) config_error("'" + std::string(key) + "' must be a string");
    out = *v;
  }
}

Optimizer parse_optimizer(const std::string& name) {
  if (name == "adam") return Optimizer::adam;
  if (name == "gradient-descent") return Optimizer::gradient_descent;
  config_error("unknown optimizer '" + name + "' (expected adam or gradient-descent)");
}

const char* optimizer_name(Optimizer o) { return o == Optimizer::adam ? "adam" : "gradient-descent"; }

void read_model(const toml::table& t, RunConfig& c) {
  require_known_keys(t, "[model]",
                     {"theta", "d_min", "d_max", "d_count", "omega1", "omega2", "m1", "m2", "q1", "q2", "hbar",
                      "softening"});
  if (const toml::node* n = t.get("theta")) {
    c.thetas.clear();
    if (const toml::array* arr = n->as_array()) {
      for (const toml::node& v : *arr) c.thetas.push_back(as_double(v, "theta"));
    } else {
      c.thetas.push_back(as_double(*n, "theta"));
    }
  }
  read(t, "d_min", c.d_min);
  read(t, "d_max", c.d_max);
  read(t, "d_count", c.d_count);
  read(t, "omega1", c.model.omega1);
  read(t, "omega2", c.model.omega2);
  read(t, "m1", c.model.m1);
  read(t, "m2", c.model.m2);
  read(t, "q1", c.model.q1);
  read(t, "q2", c.model.q2);
  read(t, "hbar", c.model.hbar);
  read(t, "softening", c.model.softening);
}

void read_vqe(const toml::table& t, RunConfig& c) {
  require_known_keys(t, "[vqe]",
                     {"n_layers", "max_steps", "learning_rate", "optimizer", "fd_step", "norm_penalty", "tolerance",
                      "patience", "padded_gates", "grid_min", "grid_max", "grid_points"});
  VqeConfig& v = c.vqe;
  read(t, "n_layers", v.n_layers);
  read(t, "max_steps", v.max_steps);
  read(t, "learning_rate", v.learning_rate);
  std::string optimizer = optimizer_name(v.optimizer);
  read(t, "optimizer", optimizer);
  v.optimizer = parse_optimizer(optimizer);
  read(t, "fd_step", v.fd_step);
  read(t, "norm_penalty", v.norm_penalty);
  read(t, "tolerance", v.tolerance);
  read(t, "patience", v.patience);
  read(t, "padded_gates", v.gates.padded);
  double lo = v.grid.min(), hi = v.grid.max();
  int points = v.grid.size();
  read(t, "grid_min", lo);
  read(t, "grid_max", hi);
  read(t, "grid_points", points);
  try {
    v.grid = QuadratureGrid(lo, hi, points);
  } catch (const ParameterOutOfRange& e) {
    config_error(std::string("[vqe] grid: ") + e.what());
  }
}

void read_analysis(const toml::table& t, RunConfig& c) {
  require_known_keys(t, "[analysis]",
                     {"bandwidth", "morse", "cat_fit", "cat_re_min", "cat_re_max", "cat_im_min", "cat_im_max",
                      "cat_step"});
  read(t, "bandwidth", c.bandwidth);
  read(t, "morse", c.morse);
  read(t, "cat_fit", c.cat_fit);
  read(t, "cat_re_min", c.cat_box.re_min);
  read(t, "cat_re_max", c.cat_box.re_max);
  read(t, "cat_im_min", c.cat_box.im_min);
  read(t, "cat_im_max", c.cat_box.im_max);
  read(t, "cat_step", c.cat_box.step);
}

void read_output(const toml::table& t, RunConfig& c) {
  require_known_keys(t, "[output]", {"directory", "formats", "write_states"});
  std::string dir = c.directory.string();
  read(t, "directory", dir);
  c.directory = dir;
  if (const toml::node* n = t.get("formats")) {
    const toml::array* arr = n->as_array();
    if (arr == nullptr) config_error("'formats' must be an array of strings");
    c.formats.clear();
    for (const toml::node& v : *arr) {
      const auto s = v.value_exact<std::string>();
      if (!s || (*s != "csv" && *s != "json" && *s != "svg")) {
        config_error("'formats' entries must be \"csv\", \"json\" or \"svg\"");
      }
      c.formats.push_back(*s);
    }
  }
  read(t, "write_states", c.write_states);
}

}  // namespace

std::vector<double> RunConfig::distances() const { return distance_grid(d_min, d_max, d_count); }

bool RunConfig::wants(std::string_view format) const {
  for (const auto& f : formats) {
    if (f == format) return true;
  }
  return false;
}

void RunConfig::validate() const {
  try {
    if (thetas.empty()) config_error("[model] theta list is empty");
    for (double theta : thetas) {
      ModelParams p = model;
      p.theta = theta;
      p.validate();
    }
    ModelParams p = model;
    p.validate();
    if (d_count < 1) config_error("[model] d_count must be positive");
    if (!(d_min >= 0.0 && d_max > d_min)) config_error("[model] need 0 <= d_min < d_max");
    vqe.validate();
    if (quad_order < 2 * vqe.fock.dim_per_mode) config_error("[oracle] quad_order must be >= 2 * dim_per_mode");
    if (!(bandwidth > 0.0)) config_error("[analysis] bandwidth must be positive");
    if (!(cat_box.step > 0.0) || cat_box.re_max < cat_box.re_min || cat_box.im_max < cat_box.im_min) {
      config_error("[analysis] cat search box is empty");
    }
    if (threads < 0) config_error("threads must be non-negative");
  } catch (const ParameterOutOfRange& e) {
    config_error(e.what());
  }
}

RunConfig parse_config(std::string_view toml_text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ": " << e.description() << " (line " << e.source().begin.line << ")";
    config_error(msg.str());
  }
  require_known_keys(root, "the top level",
                     {"seed", "engine", "threads", "model", "vqe", "fock", "oracle", "analysis", "output"});

  RunConfig c;
  if (const toml::node* n = root.get("seed")) {
    const auto v = n->value_exact<std::int64_t>();
    if (!v || *v < 0) config_error("'seed' must be a non-negative integer");
    c.seed = static_cast<std::uint64_t>(*v);
  }
  std::string engine = engine_name(c.engine);
  read(root, "engine", engine);
  c.engine = parse_engine(engine);
  read(root, "threads", c.threads);

  if (const toml::table* t = subtable(root, "model")) read_model(*t, c);
  if (const toml::table* t = subtable(root, "vqe")) read_vqe(*t, c);
  if (const toml::table* t = subtable(root, "fock")) {
    require_known_keys(*t, "[fock]", {"dim_per_mode"});
    read(*t, "dim_per_mode", c.vqe.fock.dim_per_mode);
  }
  if (const toml::table* t = subtable(root, "oracle")) {
    require_known_keys(*t, "[oracle]", {"quad_order"});
    read(*t, "quad_order", c.quad_order);
  }
  if (const toml::table* t = subtable(root, "analysis")) read_analysis(*t, c);
  if (const toml::table* t = subtable(root, "output")) read_output(*t, c);
  c.vqe.seed = c.seed;
  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["engine"] = engine_name(c.engine);
  j["threads"] = c.threads;
  j["model"] = {{"theta", c.thetas},          {"d_min", c.d_min},         {"d_max", c.d_max},
                {"d_count", c.d_count},       {"omega1", c.model.omega1}, {"omega2", c.model.omega2},
                {"m1", c.model.m1},           {"m2", c.model.m2},         {"q1", c.model.q1},
                {"q2", c.model.q2},           {"hbar", c.model.hbar},     {"softening", c.model.softening}};
  j["vqe"] = {{"n_layers", c.vqe.n_layers},
              {"max_steps", c.vqe.max_steps},
              {"learning_rate", c.vqe.learning_rate},
              {"optimizer", optimizer_name(c.vqe.optimizer)},
              {"fd_step", c.vqe.fd_step},
              {"norm_penalty", c.vqe.norm_penalty},
              {"tolerance", c.vqe.tolerance},
              {"patience", c.vqe.patience},
              {"padded_gates", c.vqe.gates.padded},
              {"grid_min", c.vqe.grid.min()},
              {"grid_max", c.vqe.grid.max()},
              {"grid_points", c.vqe.grid.size()}};
  j["fock"] = {{"dim_per_mode", c.vqe.fock.dim_per_mode}};
  j["oracle"] = {{"quad_order", c.quad_order}};
  j["analysis"] = {{"bandwidth", c.bandwidth},         {"morse", c.morse},
                   {"cat_fit", c.cat_fit},             {"cat_re_min", c.cat_box.re_min},
                   {"cat_re_max", c.cat_box.re_max},   {"cat_im_min", c.cat_box.im_min},
                   {"cat_im_max", c.cat_box.im_max},   {"cat_step", c.cat_box.step}};
  j["output"] = {{"directory", c.directory.generic_string()},
                 {"formats", c.formats},
                 {"write_states", c.write_states}};
  return j;
}

int effective_threads(const RunConfig& config) {
  if (const char* env = std::getenv("QDO_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n < 1) config_error("QDO_THREADS must be a positive integer");
    return static_cast<int>(n);
  }
  if (config.threads > 0) return config.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qdo::cli
