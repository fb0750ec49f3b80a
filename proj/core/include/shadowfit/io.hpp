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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shadowfit/counts.hpp"
#include "shadowfit/fit.hpp"
#include "shadowfit/simulate.hpp"
#include "shadowfit/verify.hpp"

namespace shadowfit::io {

/// Malformed input data (CSV or JSON). Carries a 1-based row number when one
/// is known, already baked into what().
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& message, long row = 0);
  long row() const { return row_; }

 private:
  long row_;
};

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// Long-format count table CSV with header "x,projector,count", rows sorted
/// by x and projector order H,V,D,A,R,L. Byte-deterministic.
void write_count_table_csv(std::ostream& out, const CountTable& table);
void write_count_table_csv(const std::filesystem::path& path,
                           const CountTable& table);

/// Read a count table from CSV. Accepts the long format (columns x,
/// projector, count, found by header name) and the wide format (one column
/// per projector). Projector labels are case-insensitive; duplicate
/// (x, projector) rows merge by summation. Throws DataError with the row
/// number for non-numeric fields, unknown labels, or negative counts.
CountTable read_count_table_csv(std::istream& in);
CountTable read_count_table_csv(const std::filesystem::path& path);

/// Optional header-name overrides for ingesting long-format experiment CSVs.
struct ColumnMap {
  std::optional<std::string> x;
  std::optional<std::string> projector;
  std::optional<std::string> count;
};

/// Read an experiment CSV with a column map (long format) or auto-detected
/// wide format, normalizing into a CountTable.
CountTable ingest_csv(const std::filesystem::path& path,
                      const ColumnMap& columns = {});

/// Rows of the reconstruction CSV written by fits; columns
/// x, theta, phi, phi_unwrapped, method, loss ("phi" is wrapped to
/// [0, 2 pi)).
struct ReconstructionRow {
  double x = 0.0;
  double theta = 0.0;
  double phi_wrapped = 0.0;
  double phi_unwrapped = 0.0;
  std::string method;
  double loss = 0.0;
};
void write_reconstruction_csv(std::ostream& out,
                              const std::vector<ReconstructionRow>& rows);
void write_reconstruction_csv(const std::filesystem::path& path,
                              const std::vector<ReconstructionRow>& rows);

/// Fit report round trip (model, losses, diagnostics, flags) as JSON.
std::string fit_report_to_json(const FitReport& report);

/// One verification result as a single JSON line (no trailing newline).
std::string verification_report_to_json_line(const VerificationReport& report);

/// SimConfig round trip as JSON. The schema is flat: seed, replicate,
/// schedule, a truth model object, a shots object, and either an explicit
/// xs list or a {min, max, count} grid. Errors name the offending key.
std::string sim_config_to_json(const SimConfig& config);
SimConfig sim_config_from_json(const std::string& text);
SimConfig read_sim_config(const std::filesystem::path& path);

/// Uniform grid [lo, hi] with `count` points (count >= 2; count == 1 puts
/// the point at the midpoint).
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Provenance sidecar for every output directory. The timestamp is the only
/// non-reproducible field.
struct RunManifest {
  std::string command;
  std::string tool_version;
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string timestamp;
};
std::string manifest_to_json(const RunManifest& manifest);
void write_manifest(const std::filesystem::path& directory,
                    const RunManifest& manifest);

}  // namespace shadowfit::io
