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

// shadowfit: simulate sparse polarimetry count tables, reconstruct
// wavelength-dependent polarization profiles with pointwise (cs) or global
// functional (fcs) fits, run the statistical verification suites, and ingest
// experimental CSVs into the normalized count-table format.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shadowfit/fit.hpp"
#include "shadowfit/io.hpp"
#include "shadowfit/loss.hpp"
#include "shadowfit/profiles.hpp"
#include "shadowfit/qubit.hpp"
#include "shadowfit/simulate.hpp"
#include "shadowfit/verify.hpp"
#include "shadowfit/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace shadowfit;

/// Bad flag values detected after CLI11 parsing (exit code 1, like any other
/// usage error).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FamilySpec parse_family(const std::string& text) {
  if (text == "constant") {
    return FamilySpec::constant();
  }
  if (text == "affine") {
    return FamilySpec::affine();
  }
  if (text.rfind("poly:", 0) == 0) {
    const std::string digits = text.substr(5);
    try {
      std::size_t used = 0;
      const int degree = std::stoi(digits, &used);
      if (used == digits.size() && degree >= 0) {
        return FamilySpec::polynomial(degree);
      }
    } catch (const std::exception&) {
    }
  }
  throw UsageError("unknown family '" + text +
                   "' (expected constant, affine, or poly:K)");
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw io::DataError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw io::DataError("cannot write " + path.string());
  }
}

double wrap_two_pi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) {
    w += kTwoPi;
  }
  return w == kTwoPi ? 0.0 : w;
}

long count_zero_rows(const CountTable& table) {
  long zeros = 0;
  for (const PixelCounts& pixel : table.pixels()) {
    if (pixel.total() == 0) {
      ++zeros;
    }
  }
  return zeros;
}

struct SimulateArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int run_simulate(const SimulateArgs& args) {
  SimConfig config = io::read_sim_config(args.config_path);
  if (args.seed_given) {
    config.seed = args.seed;
  }
  const CountTable table = simulate(config);

  const fs::path out(args.out_dir);
  fs::create_directories(out);
  io::write_count_table_csv(out / "counts.csv", table);
  write_text_file(out / "config.json", io::sim_config_to_json(config) + "\n");

  io::RunManifest manifest;
  manifest.command = "simulate";
  manifest.seed = config.seed;
  manifest.inputs = {args.config_path};
  manifest.outputs = {"counts.csv", "config.json"};
  io::write_manifest(out, manifest);

  std::fprintf(stderr, "simulate: wrote %s (%zu x points)\n",
               (out / "counts.csv").string().c_str(), table.pixels().size());
  return 0;
}

struct FitArgs {
  std::string table_path;
  std::string method = "fcs";
  std::string family = "affine";
  std::size_t grid = 256;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int run_fit(const FitArgs& args) {
  if (args.method != "cs" && args.method != "fcs") {
    throw UsageError("unknown method '" + args.method +
                     "' (expected cs or fcs)");
  }
  const FamilySpec family = parse_family(args.family);

  const CountTable table = io::read_count_table_csv(args.table_path);
  if (const long zeros = count_zero_rows(table); zeros > 0) {
    std::fprintf(stderr,
                 "warning: excluding %ld all-zero x row(s) from the fit\n",
                 zeros);
  }

  FitOptions options;
  if (args.seed_given) {
    options.seed = args.seed;
  }

  const fs::path out(args.out_dir);
  fs::create_directories(out);

  FitReport report;
  std::vector<io::ReconstructionRow> rows;
  std::vector<std::string> outputs;
  if (args.method == "cs") {
    report = fit_cs(table, options);
    rows.reserve(report.points.size());
    for (std::size_t i = 0; i < report.points.size(); ++i) {
      const CsPointEstimate& point = report.points[i];
      io::ReconstructionRow row;
      row.x = point.x;
      row.theta = point.hypothesis.theta;
      row.phi_wrapped = point.hypothesis.phi;
      row.phi_unwrapped = point.phi_unwrapped;
      row.method = "cs";
      row.loss = report.per_x_loss[i].loss;
      rows.push_back(row);
    }
    outputs = {"reconstruction.csv", "fit_report.json"};
  } else {
    report = fit_fcs(table, family, options);
    const ProfileModel& model = *report.model;
    const std::vector<double> xs =
        io::linspace(model.x_domain().lo, model.x_domain().hi, args.grid);
    rows.reserve(xs.size());
    for (const double x : xs) {
      // evaluate() keeps phi on the model's continuous branch, which is
      // exactly the unwrapped column; the wrapped column reduces it.
      const PureHypothesis h = model.evaluate(x);
      io::ReconstructionRow row;
      row.x = x;
      row.theta = h.theta;
      row.phi_wrapped = wrap_two_pi(h.phi);
      row.phi_unwrapped = h.phi;
      row.method = "fcs";
      row.loss = report.global_loss;
      rows.push_back(row);
    }
    write_text_file(out / "model.json", profile_model_to_json(model) + "\n");
    outputs = {"reconstruction.csv", "model.json", "fit_report.json"};
  }

  io::write_reconstruction_csv(out / "reconstruction.csv", rows);
  write_text_file(out / "fit_report.json", io::fit_report_to_json(report) + "\n");

  io::RunManifest manifest;
  manifest.command = "fit";
  manifest.seed = options.seed;
  manifest.inputs = {args.table_path};
  manifest.outputs = outputs;
  io::write_manifest(out, manifest);

  std::fprintf(stderr, "fit: method=%s global_loss=%s rows=%zu\n",
               report.method.c_str(),
               io::format_double(report.global_loss).c_str(), rows.size());
  return 0;
}

struct VerifyArgs {
  std::string suites = "unbiasedness,variance,scaling";
  long replicates = 300;
  std::uint64_t seed = 97;
  std::string out_dir;
  bool biased_loss = false;
};

std::vector<std::string> split_suites(const std::string& text) {
  std::vector<std::string> names;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) {
      names.push_back(token);
    }
  }
  if (names.empty()) {
    throw UsageError("empty suite selection");
  }
  for (const std::string& name : names) {
    if (name != "unbiasedness" && name != "variance" && name != "scaling") {
      throw UsageError("unknown suite '" + name +
                       "' (expected unbiasedness, variance, or scaling)");
    }
  }
  return names;
}

int run_verify(const VerifyArgs& args) {
  const std::vector<std::string> suites = split_suites(args.suites);

  // A fixed benchmark scenario: a quadratic-phase crystal profile as the
  // truth, probed on a modest wavelength grid, against both matched and
  // mismatched hypotheses. Seeded streams make every verdict reproducible.
  const Interval domain{800.0, 820.0};
  const TrueProfile truth = bbo_profile(2.0, domain);

  VerifyOptions options;
  options.biased_loss_null = args.biased_loss;

  std::vector<VerificationReport> reports;
  for (const std::string& suite : suites) {
    if (suite == "unbiasedness") {
      SimConfig config;
      config.truth = truth;
      config.xs = io::linspace(domain.lo, domain.hi, 10);
      config.shots = ShotsMode::random_basis(100);
      config.seed = args.seed;
      const ProfileModel hypothesis =
          ProfileModel::affine_in_x(1.3, 0.01, 2.0, 0.04, domain);
      reports.push_back(
          verify_unbiasedness(config, hypothesis, args.replicates, options));
    } else if (suite == "variance") {
      SimConfig config;
      config.truth = truth;
      config.xs = io::linspace(domain.lo, domain.hi, 10);
      config.shots = ShotsMode::random_basis(100);
      config.seed = args.seed;
      const ProfileModel hypothesis =
          ProfileModel::constant(0.25 * kPi, 1.0, domain);
      reports.push_back(verify_variance_bound(config, hypothesis, options));
    } else {
      SimConfig config;
      config.truth = truth;
      config.xs = io::linspace(domain.lo, domain.hi, 4);
      config.shots = ShotsMode::random_basis(25);
      config.seed = args.seed;
      const ProfileModel hypothesis =
          ProfileModel::constant(0.5 * kPi, kPi, domain);
      const std::vector<long> totals = {100, 1000, 10000};
      reports.push_back(verify_sample_scaling(config, hypothesis, totals,
                                              args.replicates, options));
    }
  }

  std::string lines;
  for (const VerificationReport& report : reports) {
    lines += io::verification_report_to_json_line(report);
    lines += "\n";
  }
  std::fputs(lines.c_str(), stdout);

  if (!args.out_dir.empty()) {
    const fs::path out(args.out_dir);
    fs::create_directories(out);
    write_text_file(out / "verify_report.jsonl", lines);
    io::RunManifest manifest;
    manifest.command = "verify";
    manifest.seed = args.seed;
    manifest.outputs = {"verify_report.jsonl"};
    io::write_manifest(out, manifest);
  }

  for (const VerificationReport& report : reports) {
    if (!report.passed) {
      return 3;
    }
  }
  return 0;
}

struct IngestArgs {
  std::string file;
  std::string x_col;
  std::string projector_col;
  std::string count_col;
  std::string out_dir = ".";
};

int run_ingest(const IngestArgs& args) {
  io::ColumnMap columns;
  if (!args.x_col.empty()) {
    columns.x = args.x_col;
  }
  if (!args.projector_col.empty()) {
    columns.projector = args.projector_col;
  }
  if (!args.count_col.empty()) {
    columns.count = args.count_col;
  }
  const CountTable table = io::ingest_csv(args.file, columns);

  const fs::path out(args.out_dir);
  fs::create_directories(out);
  io::write_count_table_csv(out / "counts.csv", table);

  io::RunManifest manifest;
  manifest.command = "ingest";
  manifest.inputs = {args.file};
  manifest.outputs = {"counts.csv"};
  io::write_manifest(out, manifest);

  std::fprintf(stderr, "ingest: normalized %s into %s (%zu x points)\n",
               args.file.c_str(), (out / "counts.csv").string().c_str(),
               table.pixels().size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "shadowfit: functional classical shadows for single-qubit polarimetry"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SimulateArgs simulate_args;
  CLI::App* cmd_simulate = app.add_subcommand(
      "simulate", "Generate a synthetic count table from a truth profile");
  cmd_simulate
      ->add_option("--config", simulate_args.config_path,
                   "Run configuration JSON")
      ->required();
  cmd_simulate->add_option("--out", simulate_args.out_dir,
                           "Output directory (default: .)");
  CLI::Option* simulate_seed = cmd_simulate->add_option(
      "--seed", simulate_args.seed, "Override the config seed");

  FitArgs fit_args;
  CLI::App* cmd_fit = app.add_subcommand(
      "fit", "Reconstruct a polarization profile from a count table");
  cmd_fit->add_option("table", fit_args.table_path, "Count table CSV")
      ->required();
  cmd_fit->add_option("--method", fit_args.method,
                      "Reconstruction method: cs or fcs (default: fcs)");
  cmd_fit->add_option(
      "--family", fit_args.family,
      "Angle family for fcs: constant, affine, or poly:K (default: affine)");
  cmd_fit
      ->add_option("--grid", fit_args.grid,
                   "Reconstruction grid size for fcs (default: 256)")
      ->check(CLI::PositiveNumber);
  cmd_fit->add_option("--out", fit_args.out_dir,
                      "Output directory (default: .)");
  CLI::Option* fit_seed = cmd_fit->add_option("--seed", fit_args.seed,
                                              "Optimizer restart seed");

  VerifyArgs verify_args;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "Run the statistical verification suites (JSON lines)");
  cmd_verify->add_option(
      "--suite", verify_args.suites,
      "Comma-separated suites: unbiasedness, variance, scaling (default: all)");
  cmd_verify
      ->add_option("--replicates", verify_args.replicates,
                   "Monte-Carlo replicates per suite (default: 300)")
      ->check(CLI::PositiveNumber);
  cmd_verify->add_option("--seed", verify_args.seed, "Suite seed");
  cmd_verify->add_option("--out", verify_args.out_dir,
                         "Optional directory for the JSONL report");
  // Negative control for the test harness: break the loss normalization and
  // demand that the unbiasedness suite notices. Hidden from --help.
  cmd_verify
      ->add_flag("--biased-loss", verify_args.biased_loss,
                 "Disable loss normalization (negative control)")
      ->group("");

  IngestArgs ingest_args;
  CLI::App* cmd_ingest = app.add_subcommand(
      "ingest", "Normalize an experimental CSV into a count table");
  cmd_ingest->add_option("file", ingest_args.file, "Experiment CSV")
      ->required();
  cmd_ingest->add_option("--x-col", ingest_args.x_col,
                         "Header of the x (wavelength) column");
  cmd_ingest->add_option("--projector-col", ingest_args.projector_col,
                         "Header of the projector label column");
  cmd_ingest->add_option("--count-col", ingest_args.count_col,
                         "Header of the count column");
  cmd_ingest->add_option("--out", ingest_args.out_dir,
                         "Output directory (default: .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  simulate_args.seed_given = simulate_seed->count() > 0;
  fit_args.seed_given = fit_seed->count() > 0;

  try {
    if (cmd_simulate->parsed()) {
      return run_simulate(simulate_args);
    }
    if (cmd_fit->parsed()) {
      return run_fit(fit_args);
    }
    if (cmd_verify->parsed()) {
      return run_verify(verify_args);
    }
    return run_ingest(ingest_args);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const io::DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
