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

#include <functional>
#include <span>

#include "shadowfit/counts.hpp"
#include "shadowfit/profiles.hpp"
#include "shadowfit/shadows.hpp"

namespace shadowfit {

/// Count-weighted snapshot average at one pixel:
/// sum_p (n_p / N) rho_hat_p. Unbiased estimator of the state at that x.
/// Throws std::domain_error if the pixel has no counts.
DensityOperator empirical_snapshot_average(const PixelCounts& pixel);

/// Local shadow loss of hypothesis h at pixel x:
/// 1 - sum_p (n_p / N(x)) tr(eta_h rho_hat_p). Unbounded below (snapshot
/// fidelities reach 2); its expectation is the true infidelity. Throws
/// std::domain_error if x is absent from the table or has no counts.
double local_cs_loss(const CountTable& table, double x,
                     const PureHypothesis& h);

/// Pointwise estimate at one x. The closed-form argmin of the local loss
/// over pure hypotheses is the direction of the empirical Bloch vector
/// s = tr(rho_avg sigma): theta = acos(s_z/|s|), phi = atan2(s_y, s_x)
/// wrapped to [0, 2 pi). When |s| < tie_threshold every direction ties and
/// the estimate degenerates to (0, 0) with the flag set.
struct CsPointEstimate {
  double x = 0.0;
  PureHypothesis hypothesis;
  /// Same phase on the unwrapped branch chosen by the caller (filled by
  /// fit_cs; equals hypothesis.phi for a standalone estimate).
  double phi_unwrapped = 0.0;
  double bloch_norm = 0.0;
  bool degenerate = false;
};
CsPointEstimate cs_pointwise_fit(const CountTable& table, double x,
                                 double tie_threshold = 1e-9);

/// Global functional loss: the mean over occupied x of the local loss of
/// model(x). Throws std::invalid_argument if the table has no occupied x.
double fcs_loss(const CountTable& table, const ProfileModel& model);

/// Population loss 1 - sum_i w_i |<eta_true(x_i)|eta_model(x_i)>|^2.
/// Weights must be nonnegative and sum to 1 within 1e-9.
double true_loss(const TrueProfile& truth, const ProfileModel& model,
                 std::span<const double> xs, std::span<const double> weights);

/// A mixed-state hypothesis profile: x -> density operator.
using StateProfileFn = std::function<DensityOperator(double)>;

/// Adapt a pure-profile model to a mixed-state profile function.
StateProfileFn as_state_profile(const ProfileModel& model);

/// Helstrom-weighted selection statistic for hypothesis f against
/// alternative g: sum over events of tr[P_{f,g}(x) (f(x) - rho_avg(x))],
/// accumulated pixel-by-pixel with count weights N(x). P_{f,g}(x) is the
/// Helstrom projector of the pair at x.
double mixed_loss_terms(const CountTable& table, const StateProfileFn& f,
                        const StateProfileFn& g);

/// Pick the best-supported hypothesis from a finite list by minimizing
/// mixed_loss_terms over ordered pairs (h, k), h != k, and returning the h
/// of the minimizing pair. Ties resolve to the lowest index; a single-entry
/// list returns 0. Throws std::invalid_argument on an empty list.
std::size_t select_mixed_hypothesis(
    const CountTable& table, std::span<const StateProfileFn> hypotheses);

}  // namespace shadowfit
