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

#include "shadowfit/qubit.hpp"

namespace shadowfit {

/// A single-event classical snapshot: the reconstructed operator
/// 2|p><p| - |p_perp><p_perp| together with the outcome that produced it.
/// Snapshots have trace 1 but are indefinite (eigenvalues exactly {2, -1}).
struct ClassicalSnapshot {
  DensityOperator op;
  Projector source = Projector::H;
};

/// The measure-and-prepare channel of the random-basis measurement: the rho
/// average of |b><b| outcomes over the three mutually unbiased bases (each
/// with weight 1/3) and their Born probabilities. Computed by exact
/// enumeration of the 3 x 2 outcomes; equals (rho + tr(rho) I) / 3.
DensityOperator apply_channel(const DensityOperator& rho);

/// Inverse of the channel: M^{-1}(O) = 3 O - tr(O) I. On trace-1 operators
/// this is the familiar 3 O - I.
DensityOperator invert_channel(const DensityOperator& o);

/// Snapshot reconstructed from one detection event at projector p.
ClassicalSnapshot snapshot_from_outcome(Projector p);

/// Fidelity-with-snapshot tr(eta rho_hat_p) in closed form, e.g.
/// F_H = 2 cos^2(theta/2) - sin^2(theta/2) and
/// F_D = (1 + 3 cos(phi) sin(theta)) / 2. Values lie in [-1, 2].
double snapshot_fidelity(const PureHypothesis& h, Projector p);

/// The state-dependent squared shadow norm of an observable O at state rho:
/// E_U sum_b <b|U rho U^dag|b> (<b|U M^{-1}(O) U^dag|b>)^2, evaluated by
/// exact enumeration of the 3 x 2 measurement outcomes. Throws
/// std::domain_error if rho is not a physical state.
double shadow_norm_sq(const DensityOperator& o, const DensityOperator& rho);

}  // namespace shadowfit
