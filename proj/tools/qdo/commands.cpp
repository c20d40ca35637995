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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <thread>

#include "io.hpp"
#include "qdo/errors.hpp"
#include "qdo/oracle.hpp"
#include "svg.hpp"

namespace qdo::cli {

namespace fs = std::filesystem;

namespace {

std::string curve_stem(Engine engine, double theta) {
  return std::string(engine_name(engine)) + "_theta_" + tag(theta);
}

ModelParams model_at(const RunConfig& c, double theta, double d) {
  ModelParams p = c.model;
  p.theta = theta;
  p.d = d;
  return p;
}

void fill_metrics(BindingPoint& point, const FockVector& state, const RunConfig& c) {
  point.entropy = von_neumann_entropy(partial_trace(state, Mode::first));
  point.correlation = correlation_coefficient(state, c.vqe.grid);
  point.state = state;
}

struct PointOutcome {
  BindingPoint point;
  std::optional<VqeResult> vqe;
};

PointOutcome solve_point(const RunConfig& c, Engine engine, double theta, double d) {
  PointOutcome outcome;
  BindingPoint& point = outcome.point;
  point.d = d;
  point.source = engine;
  const ModelParams p = model_at(c, theta, d);
  if (engine == Engine::oracle) {
    const auto exact = ground_state_exact(p, c.vqe.fock, c.quad_order);
    point.energy = exact.energy;
    point.norm = 1.0;
    fill_metrics(point, exact.state, c);
  } else {
    VqeConfig cfg = c.vqe;
    cfg.seed = point_seed(c.seed, theta, d);
    VqeResult result = train(p, cfg);
    point.energy = result.energy;
    point.norm = result.final_norm;
    point.steps = result.steps_taken;
    point.converged = result.converged;
    fill_metrics(point, result.state, c);
    outcome.vqe = std::move(result);
  }
  point.binding_energy = point.energy - uncoupled_ground_energy(p);
  return outcome;
}

nlohmann::ordered_json input_names(const std::vector<fs::path>& inputs) {
  nlohmann::ordered_json names = nlohmann::ordered_json::array();
  for (const auto& p : inputs) names.push_back(p.string());
  return names;
}

std::string solver_error_kind(const std::exception& e) {
  if (dynamic_cast<const SingularConfiguration*>(&e)) return "SingularConfiguration";
  if (dynamic_cast<const DegenerateState*>(&e)) return "DegenerateState";
  if (dynamic_cast<const ParameterOutOfRange*>(&e)) return "ParameterOutOfRange";
  if (dynamic_cast<const NonFinite*>(&e)) return "NonFinite";
  return "Error";
}

}  // namespace

RunConfig resolve_config(const Overrides& o) {
  RunConfig c = o.config ? load_config(*o.config) : parse_config("");
  if (o.theta) c.thetas = {*o.theta};
  if (o.out) c.directory = *o.out;
  if (o.seed) {
    c.seed = *o.seed;
    c.vqe.seed = *o.seed;
  }
  if (o.engine) c.engine = *o.engine;
  c.validate();
  if (o.d && !(*o.d > 0.0)) throw ConfigError("--d must be positive");
  return c;
}

int cmd_point(const RunConfig& c, Engine engine, const Overrides& o, std::ostream& out, std::ostream& err) {
  if (!o.d) {
    err << "error: the " << engine_name(engine) << " command needs --d\n";
    return kConfigError;
  }
  if (!o.theta && c.thetas.size() != 1) {
    err << "error: pass --theta or configure a single theta\n";
    return kConfigError;
  }
  const double theta = o.theta ? *o.theta : c.thetas.front();
  const double d = *o.d;

  Manifest manifest(c.directory, engine_name(engine), c);
  manifest.write(false);

  PointOutcome outcome;
  std::optional<CatFit> cat;
  try {
    outcome = solve_point(c, engine, theta, d);
    if (c.cat_fit) cat = fit_cat(*outcome.point.state, c.vqe.fock, c.cat_box);
  } catch (const Error& e) {
    outcome.point = BindingPoint{};
    outcome.point.d = d;
    outcome.point.source = engine;
    outcome.point.status = solver_error_kind(e);
    outcome.point.message = e.what();
  }

  const std::string stem = curve_stem(engine, theta) + "_d_" + tag(d);
  const auto record = point_json(theta, outcome.point, outcome.vqe, cat, c.write_states);
  write_atomic(c.directory / (stem + ".json"), record.dump(2) + "\n");
  manifest.add_point(theta, outcome.point);
  manifest.write(true);

  if (!outcome.point.ok()) {
    err << "error: " << engine_name(engine) << " solve failed at theta = " << theta << ", d = " << d << ": "
        << outcome.point.message << "\n";
    return kSolverFailure;
  }
  out << engine_name(engine) << " theta=" << format_double(theta) << " d=" << format_double(d)
      << " energy=" << format_double(outcome.point.energy)
      << " E_b=" << format_double(outcome.point.binding_energy) << " -> " << (c.directory / (stem + ".json")).string()
      << "\n";
  return kOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto grid = c.distances();
  const int threads = effective_threads(c);
  Manifest manifest(c.directory, std::string("sweep/") + engine_name(c.engine), c);
  manifest.add_note("threads", threads);
  manifest.write(false);

  std::vector<BindingCurve> curves(c.thetas.size());
  SweepOptions options;
  options.engine = c.engine;
  options.quad_order = c.quad_order;
  options.threads = threads;
  if (c.engine == Engine::oracle) {
    for (std::size_t t = 0; t < c.thetas.size(); ++t) {
      curves[t] = sweep(c.thetas[t], grid, c.model, c.vqe, options);
    }
  } else {
    // Each theta is one warm-started chain; chains run in parallel.
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t t = next++; t < c.thetas.size(); t = next++) {
        curves[t] = sweep(c.thetas[t], grid, c.model, c.vqe, options);
      }
    };
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), c.thetas.size());
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
  }

  std::size_t ok = 0, total = 0;
  for (std::size_t t = 0; t < c.thetas.size(); ++t) {
    const auto& curve = curves[t];
    const std::string stem = curve_stem(c.engine, curve.theta);
    if (c.wants("csv")) write_atomic(c.directory / (stem + ".csv"), write_curve_csv(curve_rows(curve)));
    if (c.wants("json") && c.write_states) {
      nlohmann::ordered_json states = nlohmann::ordered_json::array();
      for (const auto& p : curve.points) {
        states.push_back({{"d", p.d}, {"status", p.status}, {"state", p.state ? state_json(*p.state) : nullptr}});
      }
      write_atomic(c.directory / (stem + "_states.json"),
                   nlohmann::ordered_json{{"theta", curve.theta}, {"engine", engine_name(c.engine)}, {"points", states}}
                           .dump() +
                       "\n");
    }
    for (const auto& p : curve.points) {
      manifest.add_point(curve.theta, p);
      ++total;
      if (p.ok()) ++ok;
      else err << "warning: theta = " << curve.theta << ", d = " << p.d << ": " << p.status << ": " << p.message << "\n";
    }
    out << "sweep " << engine_name(c.engine) << " theta=" << format_double(curve.theta) << ": " << curve.points.size()
        << " points -> " << (c.directory / (stem + ".csv")).string() << "\n";
  }
  manifest.add_note("ok_points", ok);
  manifest.add_note("total_points", total);
  manifest.write(true);
  if (total > 0 && static_cast<double>(ok) < kMinOkFraction * static_cast<double>(total)) {
    err << "error: only " << ok << " of " << total << " points succeeded\n";
    return kTooManyFailures;
  }
  return kOk;
}

int cmd_analyze(const RunConfig& c, const std::vector<fs::path>& inputs, std::ostream& out, std::ostream& err) {
  if (inputs.empty()) {
    err << "error: analyze needs at least one curve CSV\n";
    return kConfigError;
  }
  Manifest manifest(c.directory, "analyze", c);
  manifest.add_note("inputs", input_names(inputs));
  manifest.write(false);
  std::string table = "theta,E_b,d_b,s,residual_l2,d_star,converged,points_used,status\n";
  for (const auto& input : inputs) {
    std::vector<CurveRow> rows;
    try {
      rows = parse_curve_csv(read_file(input));
    } catch (const ConfigError& e) {
      err << "error: " << input.string() << ": " << e.what() << "\n";
      return kConfigError;
    }
    const std::string stem = input.stem().string();
    const auto theta = theta_from_stem(stem);
    const BindingCurve curve = to_curve(theta.value_or(std::nan("")), rows);
    const std::string theta_text = theta ? format_double(*theta) : "";

    if (c.morse) {
      nlohmann::ordered_json fit_json;
      fit_json["source"] = input.filename().string();
      fit_json["theta"] = theta ? nlohmann::ordered_json(*theta) : nlohmann::ordered_json(nullptr);
      try {
        const MorseFit fit = fit_morse(curve);
        fit_json["status"] = "ok";
        fit_json["E_b"] = fit.depth;
        fit_json["d_b"] = fit.location;
        fit_json["s"] = fit.scale;
        fit_json["inverse_s"] = 1.0 / fit.scale;
        fit_json["residual_l2"] = fit.residual_l2;
        fit_json["converged"] = fit.converged;
        fit_json["points_used"] = fit.points_used;
        fit_json["d_star"] = inflection_point(fit);
        table += theta_text + "," + format_double(fit.depth) + "," + format_double(fit.location) + "," +
                 format_double(fit.scale) + "," + format_double(fit.residual_l2) + "," +
                 format_double(inflection_point(fit)) + "," + (fit.converged ? "true" : "false") + "," +
                 std::to_string(fit.points_used) + ",ok\n";
        out << stem << ": E_b=" << format_double(fit.depth) << " d_b=" << format_double(fit.location)
            << " s=" << format_double(fit.scale) << " residual=" << format_double(fit.residual_l2)
            << " d*=" << format_double(inflection_point(fit)) << "\n";
      } catch (const FitFailed& e) {
        fit_json["status"] = "FitFailed";
        fit_json["message"] = e.what();
        table += theta_text + ",,,,,,,," + "FitFailed\n";
        out << stem << ": FitFailed: " << e.what() << "\n";
      }
      write_atomic(c.directory / (stem + "_morse.json"), fit_json.dump(2) + "\n");
    }

    std::vector<double> d, s;
    for (const auto& r : rows) {
      if (r.status == "ok" && std::isfinite(r.entropy)) {
        d.push_back(r.d);
        s.push_back(r.entropy);
      }
    }
    const auto smooth = kernel_smooth(d, s, c.bandwidth);
    std::string entropy_csv = "d,entropy,smoothed\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
      entropy_csv += format_double(d[i]) + "," + format_double(s[i]) + "," + format_double(smooth[i]) + "\n";
    }
    write_atomic(c.directory / (stem + "_entropy.csv"), entropy_csv);
  }
  if (c.morse) write_atomic(c.directory / "residuals.csv", table);
  manifest.write(true);
  return kOk;
}

namespace {

std::vector<std::string> render_curve(const RunConfig& c, const fs::path& input, const std::vector<CurveRow>& rows) {
  const std::string stem = input.stem().string();
  std::vector<double> d, eb, ent, corr;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    d.push_back(r.d);
    eb.push_back(r.binding_energy);
    ent.push_back(r.entropy);
    corr.push_back(r.correlation);
  }
  std::vector<Series> binding{{"E_b", d, eb, "#1f77b4", false, true}};
  try {
    const MorseFit fit = fit_morse(d, eb);
    Series morse{"Morse fit", {}, {}, "#d62728", true, false};
    const int n = 200;
    for (int k = 0; k <= n; ++k) {
      const double x = d.front() + (d.back() - d.front()) * k / n;
      morse.x.push_back(x);
      morse.y.push_back(morse_value(fit, x));
    }
    binding.push_back(std::move(morse));
  } catch (const FitFailed&) {
    // No overlay without a negative minimum.
  }
  std::vector<Series> entropy{{"S", d, ent, "#2ca02c", false, true}};
  if (!d.empty()) entropy.push_back({"kernel smooth", d, kernel_smooth(d, ent, c.bandwidth), "#9467bd", true, false});
  const std::vector<Series> correlation{{"C(X1,X2)", d, corr, "#ff7f0e", false, true}};

  std::vector<std::pair<std::string, std::string>> files{
      {stem + "_binding.svg", line_plot("Binding energy " + stem, "d", "E_b", binding)},
      {stem + "_entropy.svg", line_plot("Entanglement entropy " + stem, "d", "S", entropy)},
      {stem + "_correlation.svg", line_plot("Quadrature correlation " + stem, "d", "C", correlation)}};
  std::vector<std::string> written;
  for (const auto& [name, body] : files) {
    write_atomic(c.directory / name, body);
    written.push_back(name);
  }
  return written;
}

std::vector<std::string> render_point(const RunConfig& c, const fs::path& input, const nlohmann::json& record) {
  if (!record.is_object() || !record.contains("state")) {
    throw ConfigError("point JSON has no state; rerun with output.write_states = true");
  }
  const FockVector state = state_from_json(record["state"]).normalized();
  const std::string stem = input.stem().string();
  const QuadratureGrid& grid = c.vqe.grid;
  const RMatrix density = joint_position_density(state, grid);
  const QuadratureGrid phase(-4.0, 4.0, 101);
  const RMatrix slice = wigner_antisymmetric_slice(state, phase, phase);
  const RMatrix single = wigner_single_mode(partial_trace(state, Mode::first), phase, phase);
  std::vector<std::pair<std::string, std::string>> files{
      {stem + "_density.svg",
       heat_map("Joint position density " + stem, "X1", "X2", density, {grid.min(), grid.max()},
                {grid.min(), grid.max()})},
      {stem + "_wigner.svg",
       heat_map("Wigner slice W(x, p, -x, -p) " + stem, "x", "p", slice, {phase.min(), phase.max()},
                {phase.min(), phase.max()})},
      {stem + "_wigner_mode1.svg",
       heat_map("Reduced Wigner function, mode 1 " + stem, "x", "p", single, {phase.min(), phase.max()},
                {phase.min(), phase.max()})}};
  std::vector<std::string> written;
  for (const auto& [name, body] : files) {
    write_atomic(c.directory / name, body);
    written.push_back(name);
  }
  return written;
}

}  // namespace

int cmd_render(const RunConfig& c, const std::vector<fs::path>& inputs, std::ostream& out, std::ostream& err) {
  if (inputs.empty()) {
    err << "error: render needs at least one CSV or JSON input\n";
    return kConfigError;
  }
  Manifest manifest(c.directory, "render", c);
  manifest.add_note("inputs", input_names(inputs));
  manifest.write(false);
  for (const auto& input : inputs) {
    try {
      std::vector<std::string> written;
      const std::string ext = input.extension().string();
      if (ext == ".csv") {
        written = render_curve(c, input, parse_curve_csv(read_file(input)));
      } else if (ext == ".json") {
        nlohmann::json record;
        try {
          record = nlohmann::json::parse(read_file(input));
        } catch (const nlohmann::json::exception& e) {
          throw ConfigError(std::string("malformed JSON: ") + e.what());
        }
        written = render_point(c, input, record);
      } else {
        throw ConfigError("unsupported input type '" + ext + "' (expected .csv or .json)");
      }
      for (const auto& w : written) out << (c.directory / w).string() << "\n";
    } catch (const Error& e) {
      err << "error: " << input.string() << ": " << e.what() << "\n";
      return kConfigError;
    }
  }
  manifest.write(true);
  return kOk;
}

}  // namespace qdo::cli
