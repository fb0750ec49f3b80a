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

#include "shadowfit/loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shadowfit {
namespace {

double local_loss_at_pixel(const PixelCounts& pixel, const PureHypothesis& h) {
  const double total = static_cast<double>(pixel.total());
  double fidelity_sum = 0.0;
  for (Projector p : kAllProjectors) {
    const std::int64_t n = pixel.count(p);
    if (n != 0) {
      fidelity_sum += static_cast<double>(n) * snapshot_fidelity(h, p);
    }
  }
  return 1.0 - fidelity_sum / total;
}

const PixelCounts& occupied_pixel_at(const CountTable& table, double x) {
  const PixelCounts* pixel = table.find(x);
  if (pixel == nullptr) {
    throw std::domain_error("loss: no counts recorded at the requested x");
  }
  if (pixel->total() == 0) {
    throw std::domain_error("loss: requested x has zero total counts");
  }
  return *pixel;
}

}  // namespace

DensityOperator empirical_snapshot_average(const PixelCounts& pixel) {
  const std::int64_t total = pixel.total();
  if (total == 0) {
    throw std::domain_error(
        "empirical_snapshot_average: pixel has zero counts");
  }
  // sum_p (n_p/N) (I/2 + (3/2) n_p_axis . sigma): accumulate in Bloch form.
  Vector3d bloch = Vector3d::Zero();
  for (Projector p : kAllProjectors) {
    bloch += (3.0 * static_cast<double>(pixel.count(p))) * projector_axis(p);
  }
  bloch /= static_cast<double>(total);
  return DensityOperator::from_bloch(1.0, bloch);
}

double local_cs_loss(const CountTable& table, double x,
                     const PureHypothesis& h) {
  return local_loss_at_pixel(occupied_pixel_at(table, x), h);
}

CsPointEstimate cs_pointwise_fit(const CountTable& table, double x,
                                 double tie_threshold) {
  const PixelCounts& pixel = occupied_pixel_at(table, x);
  const Vector3d s = empirical_snapshot_average(pixel).bloch();
  const double norm = s.norm();

  CsPointEstimate est;
  est.x = x;
  est.bloch_norm = norm;
  if (norm < tie_threshold) {
    // Every pure hypothesis ties; fall back to the +z pole.
    est.degenerate = true;
    est.hypothesis = PureHypothesis{0.0, 0.0};
    est.phi_unwrapped = 0.0;
    return est;
  }
  const double cos_theta = std::clamp(s.z() / norm, -1.0, 1.0);
  double phi = std::atan2(s.y(), s.x());
  if (phi < 0.0) {
    phi += kTwoPi;  // wrap to [0, 2 pi)
  }
  est.hypothesis = PureHypothesis{std::acos(cos_theta), phi};
  est.phi_unwrapped = phi;
  return est;
}

double fcs_loss(const CountTable& table, const ProfileModel& model) {
  double sum = 0.0;
  std::size_t occupied = 0;
  for (const PixelCounts& pixel : table.pixels()) {
    if (pixel.total() == 0) {
      continue;
    }
    sum += local_loss_at_pixel(pixel, model.evaluate(pixel.x));
    ++occupied;
  }
  if (occupied == 0) {
    throw std::invalid_argument("fcs_loss: table has no occupied x");
  }
  return sum / static_cast<double>(occupied);
}

double true_loss(const TrueProfile& truth, const ProfileModel& model,
                 std::span<const double> xs,
                 std::span<const double> weights) {
  if (xs.size() != weights.size() || xs.empty()) {
    throw std::invalid_argument("true_loss: xs/weights size mismatch");
  }
  double weight_sum = 0.0;
  double fidelity = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (weights[i] < 0.0) {
      throw std::invalid_argument("true_loss: negative weight");
    }
    weight_sum += weights[i];
    fidelity += weights[i] * pure_fidelity(truth.evaluate(xs[i]),
                                           model.evaluate(xs[i]));
  }
  if (std::abs(weight_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("true_loss: weights must sum to 1");
  }
  return 1.0 - fidelity;
}

StateProfileFn as_state_profile(const ProfileModel& model) {
  return [model](double x) { return model.state_at(x); };
}

double mixed_loss_terms(const CountTable& table, const StateProfileFn& f,
                        const StateProfileFn& g) {
  double sum = 0.0;
  for (const PixelCounts& pixel : table.pixels()) {
    const std::int64_t total = pixel.total();
    if (total == 0) {
      continue;
    }
    const DensityOperator fx = f(pixel.x);
    const DensityOperator proj = helstrom_projector(fx, g(pixel.x));
    const DensityOperator residual = fx - empirical_snapshot_average(pixel);
    sum += static_cast<double>(total) * trace_product(proj, residual);
  }
  return sum;
}

std::size_t select_mixed_hypothesis(
    const CountTable& table, std::span<const StateProfileFn> hypotheses) {
  if (hypotheses.empty()) {
    throw std::invalid_argument("select_mixed_hypothesis: empty list");
  }
  if (hypotheses.size() == 1) {
    return 0;
  }
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < hypotheses.size(); ++h) {
    for (std::size_t k = 0; k < hypotheses.size(); ++k) {
      if (h == k) {
        continue;
      }
      const double value = mixed_loss_terms(table, hypotheses[h],
                                            hypotheses[k]);
      // Strict improvement only: ties resolve to the lowest (h, k) pair.
      if (value < best_value) {
        best_value = value;
        best = h;
      }
    }
  }
  return best;
}

}  // namespace shadowfit
