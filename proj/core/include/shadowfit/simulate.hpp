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

#include <cstdint>
#include <vector>

#include "shadowfit/counts.hpp"
#include "shadowfit/profiles.hpp"

namespace shadowfit {

/// How many detection events land at each x, and how their analyzer
/// settings are chosen.
enum class ShotsKind {
  /// m Born-sampled events per basis per x: N(x) = 3 m exactly.
  fixed_per_setting,
  /// n events per x with the basis chosen per event: N(x) = n exactly.
  random_basis,
  /// Per basis, a Poisson(rate * frames) total split by Born probabilities;
  /// N(x) is random.
  poisson_frames,
  /// Noise-free tables: per basis, a fixed large denominator S split as
  /// n_p = round(S * P(p)), n_perp = S - n_p. No randomness.
  exact_proportions,
};

struct ShotsMode {
  ShotsKind kind = ShotsKind::fixed_per_setting;
  std::int64_t per_setting = 0;     ///< fixed_per_setting
  std::int64_t total_events = 0;    ///< random_basis
  double rate = 0.1;                ///< poisson_frames: mean counts per frame
  std::int64_t frames = 0;          ///< poisson_frames
  std::int64_t proportion_scale = 1'000'000'000'000;  ///< exact_proportions

  static ShotsMode fixed_per_setting(std::int64_t m);
  static ShotsMode random_basis(std::int64_t n);
  static ShotsMode poisson_frames(double rate, std::int64_t frames);
  static ShotsMode exact_proportions(
      std::int64_t scale = 1'000'000'000'000);
};

/// Per-event analyzer-basis schedule for random_basis mode: cycled walks
/// Z, X, Y, Z, ... deterministically; uniform_random draws each event's
/// basis uniformly. Only random_basis distinguishes the two.
enum class Schedule { cycled, uniform_random };

struct SimConfig {
  TrueProfile truth;
  std::vector<double> xs;
  ShotsMode shots;
  Schedule schedule = Schedule::uniform_random;
  std::uint64_t seed = 0;
  /// Replicate index for Monte-Carlo harnesses; independent streams derive
  /// from (seed, replicate, pixel).
  std::uint64_t replicate = 0;
};

/// Born probability |<p|eta>|^2 of outcome p on the pure hypothesis.
/// Basis pairs sum to 1 exactly.
double outcome_probability(const PureHypothesis& h, Projector p);

/// Generate one count table. Deterministic: the same config (seed and
/// replicate included) yields a bit-identical table regardless of thread
/// count, because each pixel consumes its own derived stream. Throws
/// std::invalid_argument on an empty grid, an x outside the truth domain,
/// or a shots mode that cannot produce any event.
CountTable simulate(const SimConfig& config);

/// Convenience ground truth mirroring a birefringent-crystal measurement:
/// the preparation |A> (theta = pi/2, phi = pi) acquires an affine spectral
/// phase, phi(x) = pi + L * (center_phase + slope * (x - midpoint)), for a
/// crystal of thickness L mm. slope = 0 gives a constant profile equal to
/// the preparation up to a fixed phase. The per-mm defaults are synthetic
/// but give a few radians of swing over a typical 20 nm window.
TrueProfile bbo_profile(double length_mm, Interval x_domain,
                        double center_phase_per_mm = 0.8,
                        double slope_per_mm = -0.02);

}  // namespace shadowfit
