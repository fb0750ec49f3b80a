// Copyright 2026 The shadowfit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shadowfit/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shadowfit/version.hpp"

namespace shadowfit::io {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end &&
         std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  while (end > begin &&
         std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  return std::string(text.substr(begin, end - begin));
}

std::string lower(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return text;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    fields.push_back(trim(field));
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

double parse_double_field(const std::string& field, long row,
                          const char* what) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError(std::string("non-numeric ") + what + " '" + field + "'",
                    row);
  }
  return value;
}

std::int64_t parse_count_field(const std::string& field, long row) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError("non-numeric count '" + field + "'", row);
  }
  if (value < 0) {
    throw DataError("negative count " + field, row);
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open file: " + path.string());
  }
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path.string());
  }
  return out;
}

int find_column(const std::vector<std::string>& header,
                const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string h = lower(header[i]);
    for (const std::string& name : names) {
      if (h == name) {
        return static_cast<int>(i);
      }
    }
  }
  return -1;
}

ordered_json shots_to_json(const ShotsMode& shots) {
  ordered_json j;
  switch (shots.kind) {
    case ShotsKind::fixed_per_setting:
      j["mode"] = "fixed_per_setting";
      j["per_setting"] = shots.per_setting;
      break;
    case ShotsKind::random_basis:
      j["mode"] = "random_basis";
      j["total_events"] = shots.total_events;
      break;
    case ShotsKind::poisson_frames:
      j["mode"] = "poisson_frames";
      j["rate"] = shots.rate;
      j["frames"] = shots.frames;
      break;
    case ShotsKind::exact_proportions:
      j["mode"] = "exact_proportions";
      j["scale"] = shots.proportion_scale;
      break;
  }
  return j;
}

template <typename T>
T require_key(const ordered_json& j, const char* key, const char* context) {
  if (!j.contains(key)) {
    throw DataError(std::string(context) + ": missing key '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw DataError(std::string(context) + ": invalid value for key '" + key +
                    "'");
  }
}

ShotsMode shots_from_json(const ordered_json& j) {
  const std::string mode = require_key<std::string>(j, "mode", "shots");
  if (mode == "fixed_per_setting") {
    return ShotsMode::fixed_per_setting(
        require_key<std::int64_t>(j, "per_setting", "shots"));
  }
  if (mode == "random_basis") {
    return ShotsMode::random_basis(
        require_key<std::int64_t>(j, "total_events", "shots"));
  }
  if (mode == "poisson_frames") {
    return ShotsMode::poisson_frames(
        require_key<double>(j, "rate", "shots"),
        require_key<std::int64_t>(j, "frames", "shots"));
  }
  if (mode == "exact_proportions") {
    ShotsMode shots = ShotsMode::exact_proportions();
    if (j.contains("scale")) {
      shots.proportion_scale = require_key<std::int64_t>(j, "scale", "shots");
    }
    return shots;
  }
  throw DataError("shots: unknown mode '" + mode + "'");
}

}  // namespace

DataError::DataError(const std::string& message, long row)
    : std::runtime_error(row > 0 ? "row " + std::to_string(row) + ": " +
                                       message
                                 : message),
      row_(row) {}

std::string format_double(double value) {
  std::array<char, 64> buffer;
  const auto [ptr, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

void write_count_table_csv(std::ostream& out, const CountTable& table) {
  out << "x,projector,count\n";
  for (const PixelCounts& pixel : table.pixels()) {
    for (Projector p : kAllProjectors) {
      out << format_double(pixel.x) << ',' << projector_label(p) << ','
          << pixel.count(p) << '\n';
    }
  }
}

void write_count_table_csv(const std::filesystem::path& path,
                           const CountTable& table) {
  auto out = open_output(path);
  write_count_table_csv(out, table);
}

CountTable read_count_table_csv(std::istream& in) {
  std::string line;
  long row = 0;

  // Header.
  if (!std::getline(in, line)) {
    throw DataError("empty CSV");
  }
  ++row;
  const std::vector<std::string> header = split_csv_line(line);

  // Wide format: one column per projector label.
  std::array<int, 6> wide_cols{};
  bool wide = true;
  for (Projector p : kAllProjectors) {
    const int col =
        find_column(header, {lower(std::string(projector_label(p)))});
    wide_cols[static_cast<std::size_t>(p)] = col;
    wide = wide && col >= 0;
  }

  std::vector<CountRecord> records;
  if (wide) {
    int x_col = find_column(header, {"x", "wavelength", "lambda",
                                     "wavelength_nm"});
    if (x_col < 0) {
      x_col = 0;  // first column by convention
    }
    while (std::getline(in, line)) {
      ++row;
      if (trim(line).empty()) {
        continue;
      }
      const std::vector<std::string> fields = split_csv_line(line);
      if (static_cast<int>(fields.size()) <= x_col) {
        throw DataError("missing x column", row);
      }
      const double x = parse_double_field(fields[x_col], row, "x");
      for (Projector p : kAllProjectors) {
        const int col = wide_cols[static_cast<std::size_t>(p)];
        if (col >= static_cast<int>(fields.size())) {
          throw DataError("missing projector column '" +
                              std::string(projector_label(p)) + "'",
                          row);
        }
        records.push_back(
            CountRecord{x, p, parse_count_field(fields[col], row)});
      }
    }
    return CountTable(records);
  }

  // Long format.
  const int x_col = find_column(header, {"x", "wavelength", "lambda",
                                         "wavelength_nm"});
  const int p_col = find_column(header, {"projector", "setting", "basis",
                                         "polarization"});
  const int c_col = find_column(header, {"count", "counts", "n"});
  if (x_col < 0 || p_col < 0 || c_col < 0) {
    throw DataError(
        "header must name x, projector and count columns (or one column per "
        "projector for the wide format)",
        1);
  }
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) {
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line);
    const int needed = std::max({x_col, p_col, c_col});
    if (static_cast<int>(fields.size()) <= needed) {
      throw DataError("expected at least " + std::to_string(needed + 1) +
                          " columns",
                      row);
    }
    const double x = parse_double_field(fields[x_col], row, "x");
    const auto projector = parse_projector(fields[p_col]);
    if (!projector) {
      throw DataError("unknown projector label '" + fields[p_col] + "'", row);
    }
    records.push_back(
        CountRecord{x, *projector, parse_count_field(fields[c_col], row)});
  }
  return CountTable(records);
}

CountTable read_count_table_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_count_table_csv(in);
}

CountTable ingest_csv(const std::filesystem::path& path,
                      const ColumnMap& columns) {
  if (!columns.x && !columns.projector && !columns.count) {
    return read_count_table_csv(path);
  }
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("empty CSV");
  }
  const std::vector<std::string> header = split_csv_line(line);
  const auto resolve = [&](const std::optional<std::string>& name,
                           std::vector<std::string> defaults) {
    if (name) {
      const int col = find_column(header, {lower(*name)});
      if (col < 0) {
        throw DataError("column '" + *name + "' not found in header", 1);
      }
      return col;
    }
    const int col = find_column(header, defaults);
    if (col < 0) {
      throw DataError("required column missing from header", 1);
    }
    return col;
  };
  const int x_col = resolve(columns.x, {"x", "wavelength", "lambda"});
  const int p_col =
      resolve(columns.projector, {"projector", "setting", "basis"});
  const int c_col = resolve(columns.count, {"count", "counts", "n"});

  std::vector<CountRecord> records;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) {
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line);
    const int needed = std::max({x_col, p_col, c_col});
    if (static_cast<int>(fields.size()) <= needed) {
      throw DataError("expected at least " + std::to_string(needed + 1) +
                          " columns",
                      row);
    }
    const double x = parse_double_field(fields[x_col], row, "x");
    const auto projector = parse_projector(fields[p_col]);
    if (!projector) {
      throw DataError("unknown projector label '" + fields[p_col] + "'", row);
    }
    records.push_back(
        CountRecord{x, *projector, parse_count_field(fields[c_col], row)});
  }
  return CountTable(records);
}

void write_reconstruction_csv(std::ostream& out,
                              const std::vector<ReconstructionRow>& rows) {
  out << "x,theta,phi,phi_unwrapped,method,loss\n";
  for (const ReconstructionRow& r : rows) {
    out << format_double(r.x) << ',' << format_double(r.theta) << ','
        << format_double(r.phi_wrapped) << ','
        << format_double(r.phi_unwrapped) << ',' << r.method << ','
        << format_double(r.loss) << '\n';
  }
}

void write_reconstruction_csv(const std::filesystem::path& path,
                              const std::vector<ReconstructionRow>& rows) {
  auto out = open_output(path);
  write_reconstruction_csv(out, rows);
}

std::string fit_report_to_json(const FitReport& report) {
  ordered_json j;
  j["method"] = report.method;
  j["global_loss"] = report.global_loss;
  if (report.model) {
    j["model"] = ordered_json::parse(profile_model_to_json(*report.model));
  }
  if (!report.points.empty()) {
    ordered_json points = ordered_json::array();
    for (const CsPointEstimate& p : report.points) {
      ordered_json jp;
      jp["x"] = p.x;
      jp["theta"] = p.hypothesis.theta;
      jp["phi"] = p.hypothesis.phi;
      jp["phi_unwrapped"] = p.phi_unwrapped;
      jp["bloch_norm"] = p.bloch_norm;
      jp["degenerate"] = p.degenerate;
      points.push_back(std::move(jp));
    }
    j["points"] = std::move(points);
  }
  {
    ordered_json losses = ordered_json::array();
    for (const PerXLoss& l : report.per_x_loss) {
      losses.push_back(ordered_json{{"x", l.x}, {"loss", l.loss}});
    }
    j["per_x_loss"] = std::move(losses);
  }
  j["diagnostics"] = ordered_json{
      {"restarts", report.diagnostics.restarts},
      {"iterations", report.diagnostics.iterations},
      {"function_evaluations", report.diagnostics.function_evaluations},
      {"converged", report.diagnostics.converged}};
  {
    ordered_json flags = ordered_json::array();
    for (const IdentifiabilityFlag& f : report.flags) {
      flags.push_back(ordered_json{{"x", f.x},
                                   {"near_pole", f.near_pole},
                                   {"weak_signal", f.weak_signal}});
    }
    j["identifiability_flags"] = std::move(flags);
  }
  return j.dump(2);
}

std::string verification_report_to_json_line(
    const VerificationReport& report) {
  ordered_json j;
  j["test"] = report.name;
  j["estimate"] = report.estimate;
  j["std_error"] = report.std_error;
  j[report.is_upper_bound ? "bound" : "target"] = report.reference;
  j["pass"] = report.passed;
  j["replicates"] = report.replicates;
  j["seed"] = report.seed;
  if (!report.detail.empty()) {
    j["detail"] = report.detail;
  }
  return j.dump();
}

std::string sim_config_to_json(const SimConfig& config) {
  ordered_json j;
  j["seed"] = config.seed;
  j["replicate"] = config.replicate;
  j["schedule"] = (config.schedule == Schedule::cycled) ? "cycled"
                                                        : "uniform_random";
  j["truth"] = ordered_json::parse(profile_model_to_json(config.truth));
  j["shots"] = shots_to_json(config.shots);
  j["xs"] = config.xs;
  return j.dump(2);
}

SimConfig sim_config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("config JSON parse error: ") + e.what());
  }
  if (!j.contains("seed")) {
    throw DataError("config: seed required");
  }
  if (!j.contains("truth")) {
    throw DataError("config: missing key 'truth'");
  }
  if (!j.contains("shots")) {
    throw DataError("config: missing key 'shots'");
  }

  TrueProfile truth = [&]() {
    try {
      return profile_model_from_json(j.at("truth").dump());
    } catch (const std::exception& e) {
      throw DataError(std::string("config: invalid 'truth': ") + e.what());
    }
  }();

  std::vector<double> xs;
  if (j.contains("xs") && j.at("xs").is_array()) {
    xs = j.at("xs").get<std::vector<double>>();
  } else if (j.contains("xs") && j.at("xs").is_object()) {
    const ordered_json& grid = j.at("xs");
    const double lo = require_key<double>(grid, "min", "config xs");
    const double hi = require_key<double>(grid, "max", "config xs");
    const auto count = require_key<std::size_t>(grid, "count", "config xs");
    xs = linspace(lo, hi, count);
  } else {
    throw DataError("config: missing key 'xs'");
  }

  SimConfig config{std::move(truth), std::move(xs),
                   shots_from_json(j.at("shots"))};
  config.seed = require_key<std::uint64_t>(j, "seed", "config");
  if (j.contains("replicate")) {
    config.replicate = require_key<std::uint64_t>(j, "replicate", "config");
  }
  if (j.contains("schedule")) {
    const std::string schedule =
        require_key<std::string>(j, "schedule", "config");
    if (schedule == "cycled") {
      config.schedule = Schedule::cycled;
    } else if (schedule == "uniform_random") {
      config.schedule = Schedule::uniform_random;
    } else {
      throw DataError("config: unknown schedule '" + schedule + "'");
    }
  }
  return config;
}

SimConfig read_sim_config(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sim_config_from_json(buffer.str());
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> xs;
  if (count == 0) {
    return xs;
  }
  xs.reserve(count);
  if (count == 1) {
    xs.push_back(0.5 * (lo + hi));
    return xs;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    xs.push_back(i + 1 == count ? hi : lo + static_cast<double>(i) * step);
  }
  return xs;
}

std::string manifest_to_json(const RunManifest& manifest) {
  ordered_json j;
  j["command"] = manifest.command;
  j["tool_version"] = manifest.tool_version;
  j["seed"] = manifest.seed;
  j["inputs"] = manifest.inputs;
  j["outputs"] = manifest.outputs;
  j["timestamp"] = manifest.timestamp;
  return j.dump(2);
}

void write_manifest(const std::filesystem::path& directory,
                    const RunManifest& manifest) {
  RunManifest stamped = manifest;
  if (stamped.tool_version.empty()) {
    stamped.tool_version = kVersion;
  }
  if (stamped.timestamp.empty()) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    stamped.timestamp = buffer;
  }
  auto out = open_output(directory / "manifest.json");
  out << manifest_to_json(stamped) << '\n';
}

}  // namespace shadowfit::io
