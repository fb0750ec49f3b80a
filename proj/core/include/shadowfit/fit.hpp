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

#include <optional>
#include <string>

#include "shadowfit/loss.hpp"
#include "shadowfit/nelder_mead.hpp"

namespace shadowfit {

struct FitOptions {
  int restarts = 8;              ///< multi-start count, seed model included
  int max_iterations = 800;      ///< simplex iterations per start
  double loss_tolerance = 1e-12;
  double simplex_tolerance = 1e-9;
  std::uint64_t seed = 0x736861646f774654ull;  ///< restart perturbation seed
  double restart_scale = 0.5;    ///< std-dev of restart perturbations
  double tie_threshold = 1e-9;   ///< degenerate-pixel Bloch-norm cutoff
  double pole_threshold = 1e-2;  ///< identifiability: theta near 0 or pi
  double weak_signal_threshold = 1e-2;  ///< identifiability: small |s|
  bool parallel_restarts = true;
};

struct FitDiagnostics {
  int restarts = 0;
  long iterations = 0;
  long function_evaluations = 0;
  bool converged = false;
};

/// Per-x identifiability warnings: phi is meaningless near the poles, and a
/// short empirical Bloch vector supports no direction strongly.
struct IdentifiabilityFlag {
  double x = 0.0;
  bool near_pole = false;
  bool weak_signal = false;
};

struct PerXLoss {
  double x = 0.0;
  double loss = 0.0;
};

/// Result of a fit. FCS fits populate `model`; CS fits populate `points`
/// (one estimate per occupied x, with phi unwrapped along increasing x).
/// global_loss is the functional loss of the fitted model (FCS) or the mean
/// of the per-x local losses (CS).
struct FitReport {
  std::string method;
  std::optional<ProfileModel> model;
  std::vector<CsPointEstimate> points;
  double global_loss = 0.0;
  std::vector<PerXLoss> per_x_loss;
  FitDiagnostics diagnostics;
  std::vector<IdentifiabilityFlag> flags;
};

/// Unwrap a sequence of phases given on [0, 2 pi) (or any branch) into a
/// continuous sequence: each element moves by the multiple of 2 pi that
/// brings it nearest its predecessor; exact half-turn ties pull toward zero
/// winding. The first element keeps its value reduced to (-pi, pi].
std::vector<double> unwrap_phases(std::span<const double> wrapped);

/// Least-squares seed for the functional fit: CS pointwise estimates at the
/// occupied x (degenerate pixels excluded), phi unwrapped, each angle fitted
/// by linear least squares in the rescaled coordinate.
ProfileModel cs_seed_model(const CountTable& table, FamilySpec theta_family,
                           FamilySpec phi_family, Interval x_domain,
                           const FitOptions& options = {});

/// Pointwise (CS) fit over all occupied x. Throws std::invalid_argument on
/// a table without occupied x.
FitReport fit_cs(const CountTable& table, const FitOptions& options = {});

/// Global functional (FCS) fit: multi-start Nelder-Mead over the packed
/// coefficients, seeded by the least-squares CS model. The reported loss
/// never exceeds the seed model's loss, because the seed itself stays in the
/// candidate set. Restarts may run in parallel; results are identical to
/// sequential execution (fixed start list, ties broken by start index).
FitReport fit_fcs(const CountTable& table, FamilySpec family,
                  const FitOptions& options = {});

/// FCS fit with independent families per angle.
FitReport fit_fcs(const CountTable& table, FamilySpec theta_family,
                  FamilySpec phi_family, const FitOptions& options = {});

}  // namespace shadowfit
