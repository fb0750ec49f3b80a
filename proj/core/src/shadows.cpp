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

#include "shadowfit/shadows.hpp"

#include <cmath>
#include <stdexcept>

namespace shadowfit {

DensityOperator apply_channel(const DensityOperator& rho) {
  // One third per basis, both outcomes per basis: sum over all six
  // projectors of (1/3) <p|rho|p> |p><p|.
  DensityOperator out = DensityOperator::zero();
  for (Projector p : kAllProjectors) {
    const DensityOperator pp = projector_state(p);
    out = out + pp * (trace_product(pp, rho) / 3.0);
  }
  return out;
}

DensityOperator invert_channel(const DensityOperator& o) {
  return o * 3.0 - DensityOperator::identity() * o.trace();
}

ClassicalSnapshot snapshot_from_outcome(Projector p) {
  // 2|p><p| - |p_perp><p_perp| = I/2 + (3/2) n_p . sigma: trace 1, Bloch
  // vector 3 n_p. The Bloch form keeps all entries exact in binary.
  return ClassicalSnapshot{
      DensityOperator::from_bloch(1.0, 3.0 * projector_axis(p)), p};
}

double snapshot_fidelity(const PureHypothesis& h, Projector p) {
  // tr(eta rho_hat_p) = 1/2 + (3/2) n_p . n_eta.
  const double ct = std::cos(h.theta);
  const double st = std::sin(h.theta);
  switch (p) {
    case Projector::H:
      return 0.5 + 1.5 * ct;
    case Projector::V:
      return 0.5 - 1.5 * ct;
    case Projector::D:
      return 0.5 * (1.0 + 3.0 * std::cos(h.phi) * st);
    case Projector::A:
      return 0.5 * (1.0 - 3.0 * std::cos(h.phi) * st);
    case Projector::R:
      return 0.5 * (1.0 + 3.0 * std::sin(h.phi) * st);
    case Projector::L:
      return 0.5 * (1.0 - 3.0 * std::sin(h.phi) * st);
  }
  throw std::invalid_argument("snapshot_fidelity: invalid projector");
}

double shadow_norm_sq(const DensityOperator& o, const DensityOperator& rho) {
  if (!rho.is_physical_state()) {
    throw std::domain_error("shadow_norm_sq: rho is not a physical state");
  }
  const DensityOperator inv = invert_channel(o);
  double norm_sq = 0.0;
  for (Projector p : kAllProjectors) {
    const DensityOperator pp = projector_state(p);
    const double born = trace_product(pp, rho);
    const double amp = trace_product(pp, inv);
    norm_sq += born * amp * amp / 3.0;
  }
  return norm_sq;
}

}  // namespace shadowfit
