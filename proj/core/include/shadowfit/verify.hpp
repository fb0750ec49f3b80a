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

#include <string>

#include "shadowfit/loss.hpp"
#include "shadowfit/simulate.hpp"

namespace shadowfit {

/// Outcome of one statistical check: an estimate with its standard error
/// against a target (two-sided) or an upper bound (one-sided).
struct VerificationReport {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double reference = 0.0;
  bool is_upper_bound = false;
  bool passed = false;
  long replicates = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

struct VerifyOptions {
  /// Negative control: evaluate the global loss without the 1/|X|
  /// normalization, which is deliberately biased on multi-x grids. The
  /// unbiasedness check must fail under this flag.
  bool biased_loss_null = false;
  /// Monte-Carlo single events for the variance estimate.
  long variance_events = 200000;
  /// Two-sided tolerance in standard errors for mean comparisons.
  double mean_sigmas = 4.0;
  /// One-sided slack in standard errors for the variance bound.
  double variance_sigmas = 5.0;
  /// Accepted log-log slope window around the ideal -1/2.
  double slope_lo = -0.62;
  double slope_hi = -0.38;
  /// Absolute tolerance when the estimator is deterministic (zero SE).
  double exact_tolerance = 1e-10;
};

/// Check that the empirical global loss is an unbiased estimate of the true
/// loss: |mean - true| <= mean_sigmas * SEM over the replicate tables (or
/// <= exact_tolerance when all replicates coincide). The truth lives inside
/// `config`; replicates use consecutive replicate indices starting at
/// config.replicate. Throws std::invalid_argument for replicates < 100.
VerificationReport verify_unbiasedness(const SimConfig& config,
                                       const ProfileModel& hypothesis,
                                       long replicates,
                                       const VerifyOptions& options = {});

/// Check the variance bound: the Monte-Carlo variance of the single-event
/// loss must not exceed max_x of the squared shadow norm of the centered
/// hypothesis eta_0(x) = eta(x) - (mean_x tr eta) I / 2, up to
/// variance_sigmas standard errors. Exact-proportion configs short-circuit
/// to a deterministic zero-variance estimate.
VerificationReport verify_variance_bound(const SimConfig& config,
                                         const ProfileModel& hypothesis,
                                         const VerifyOptions& options = {});

/// Check the T^{-1/2} sample scaling: the RMS deviation of the empirical
/// loss from the true loss, over replicate tables of T total events,
/// must fall on a log-log line with slope inside [slope_lo, slope_hi].
/// Requires at least three T values spanning two decades, each divisible
/// by the grid size. Throws std::invalid_argument otherwise.
VerificationReport verify_sample_scaling(const SimConfig& config,
                                         const ProfileModel& hypothesis,
                                         std::span<const long> total_events,
                                         long replicates,
                                         const VerifyOptions& options = {});

}  // namespace shadowfit
