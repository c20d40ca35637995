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

#include "io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qdo/errors.hpp"

namespace qdo::cli {

namespace fs = std::filesystem;

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("could not format a double");
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw ConfigError("malformed number '" + std::string(text) + "'");
  }
  return value;
}

void write_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<CurveRow> curve_rows(const BindingCurve& curve) {
  std::vector<CurveRow> rows;
  rows.reserve(curve.points.size());
  for (const auto& p : curve.points) {
    rows.push_back({p.d, p.binding_energy, p.energy, p.norm, p.entropy, p.correlation, p.status});
  }
  return rows;
}

std::string write_curve_csv(const std::vector<CurveRow>& rows) {
  std::string out(kCurveHeader);
  out += '\n';
  for (const auto& r : rows) {
    for (double v : {r.d, r.binding_energy, r.energy, r.norm, r.entropy, r.correlation}) {
      out += format_double(v);
      out += ',';
    }
    out += r.status;
    out += '\n';
  }
  return out;
}

std::vector<CurveRow> parse_curve_csv(std::string_view text) {
  std::vector<CurveRow> rows;
  std::size_t pos = 0;
  int line_no = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    return true;
  };
  std::string_view line;
  if (!next_line(line) || line != kCurveHeader) {
    throw ConfigError("curve CSV must start with the header '" + std::string(kCurveHeader) + "'");
  }
  while (next_line(line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 7) {
      throw ConfigError("curve CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                        " fields, expected 7");
    }
    try {
      rows.push_back({parse_double(fields[0]), parse_double(fields[1]), parse_double(fields[2]),
                      parse_double(fields[3]), parse_double(fields[4]), parse_double(fields[5]),
                      std::string(fields[6])});
    } catch (const ConfigError& e) {
      throw ConfigError("curve CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

BindingCurve to_curve(double theta, const std::vector<CurveRow>& rows) {
  BindingCurve curve;
  curve.theta = theta;
  for (const auto& r : rows) {
    BindingPoint p;
    p.d = r.d;
    p.binding_energy = r.binding_energy;
    p.energy = r.energy;
    p.norm = r.norm;
    p.entropy = r.entropy;
    p.correlation = r.correlation;
    p.status = r.status;
    curve.points.push_back(std::move(p));
  }
  return curve;
}

std::string tag(double value) { return format_double(value); }

std::optional<double> theta_from_stem(std::string_view stem) {
  const std::size_t at = stem.find("theta_");
  if (at == std::string_view::npos) return std::nullopt;
  std::string_view rest = stem.substr(at + 6);
  std::size_t len = 0;
  while (len < rest.size() && (std::isdigit(static_cast<unsigned char>(rest[len])) || rest[len] == '.' ||
                               rest[len] == 'e' || rest[len] == '-' || rest[len] == '+')) {
    ++len;
  }
  // Trim a trailing separator-like character such as the '.' before "csv".
  while (len > 0 && (rest[len - 1] == '.' || rest[len - 1] == '-')) --len;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(rest.data(), rest.data() + len, value);
  if (ec != std::errc() || end != rest.data() + len || len == 0) return std::nullopt;
  return value;
}

nlohmann::ordered_json state_json(const FockVector& state) {
  nlohmann::ordered_json amps = nlohmann::ordered_json::array();
  for (const Complex& a : state.amplitudes()) amps.push_back({a.real(), a.imag()});
  return amps;
}

FockVector state_from_json(const nlohmann::json& amplitudes) {
  if (!amplitudes.is_array()) throw ConfigError("state must be an array of [re, im] pairs");
  const auto n = static_cast<int>(amplitudes.size());
  const int dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (dim * dim != n || dim < 2) throw ConfigError("state length must be a square of the per-mode dimension");
  CVector amps(n);
  for (int i = 0; i < n; ++i) {
    const auto& pair = amplitudes[static_cast<std::size_t>(i)];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw ConfigError("state entries must be [re, im] number pairs");
    }
    amps[i] = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return FockVector(FockConfig{dim, 2}, amps);
}

nlohmann::ordered_json point_json(double theta, const BindingPoint& point, const std::optional<VqeResult>& vqe,
                                  const std::optional<CatFit>& cat, bool with_state) {
  nlohmann::ordered_json j;
  j["engine"] = engine_name(point.source);
  j["theta"] = theta;
  j["d"] = point.d;
  j["status"] = point.status;
  if (!point.ok()) {
    j["message"] = point.message;
    return j;
  }
  j["energy"] = point.energy;
  j["binding_energy"] = point.binding_energy;
  j["norm"] = point.norm;
  j["entropy"] = point.entropy;
  j["correlation"] = point.correlation;
  if (cat) j["cat_fit"] = {{"alpha", {cat->alpha.real(), cat->alpha.imag()}}, {"fidelity", cat->fidelity}};
  if (vqe) {
    j["steps"] = vqe->steps_taken;
    j["converged"] = vqe->converged;
    j["params"] = vqe->params.flatten();
  }
  if (with_state && point.state) {
    j["dim_per_mode"] = point.state->dim();
    j["state"] = state_json(*point.state);
  }
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Manifest::Manifest(fs::path directory, std::string command, const RunConfig& config)
    : path_(std::move(directory) / "manifest.json") {
  doc_["artifact"] = "qdo";
  doc_["version"] = kArtifactVersion;
  doc_["command"] = std::move(command);
  doc_["seed"] = config.seed;
  doc_["started_at"] = utc_timestamp();
  doc_["finished_at"] = nullptr;
  doc_["status"] = "running";
  doc_["config"] = to_json(config);
  doc_["points"] = nlohmann::ordered_json::array();
}

void Manifest::add_point(double theta, const BindingPoint& point) {
  nlohmann::ordered_json row;
  row["theta"] = theta;
  row["d"] = point.d;
  row["status"] = point.status;
  if (!point.ok()) row["message"] = point.message;
  doc_["points"].push_back(std::move(row));
}

void Manifest::add_note(std::string key, nlohmann::ordered_json value) { doc_[std::move(key)] = std::move(value); }

void Manifest::write(bool finished) {
  if (finished) {
    doc_["finished_at"] = utc_timestamp();
    doc_["status"] = "complete";
  }
  write_atomic(path_, doc_.dump(2) + "\n");
}

}  // namespace qdo::cli
