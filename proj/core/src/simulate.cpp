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

#include "shadowfit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "shadowfit/parallel.hpp"
#include "shadowfit/rng.hpp"

namespace shadowfit {
namespace {

// Born probability of the FIRST outcome of each basis (H, D, R); the
// partner gets the complement. Clamped to [0, 1]: rounding can push a pole
// state a few ulp past the boundary, which the std distributions reject.
std::array<double, 3> basis_probabilities(const PureHypothesis& h) {
  std::array<double, 3> prob = {outcome_probability(h, Projector::H),
                                outcome_probability(h, Projector::D),
                                outcome_probability(h, Projector::R)};
  for (double& p : prob) {
    p = std::clamp(p, 0.0, 1.0);
  }
  return prob;
}

void add_counts(PixelCounts& pixel, int basis, std::int64_t first,
                std::int64_t second) {
  pixel.counts[static_cast<std::size_t>(2 * basis)] += first;
  pixel.counts[static_cast<std::size_t>(2 * basis + 1)] += second;
}

PixelCounts sample_pixel(const SimConfig& config, double x,
                         std::mt19937_64& rng) {
  const PureHypothesis h = config.truth.evaluate(x);
  const std::array<double, 3> prob = basis_probabilities(h);
  PixelCounts pixel;
  pixel.x = x;

  switch (config.shots.kind) {
    case ShotsKind::fixed_per_setting: {
      const std::int64_t m = config.shots.per_setting;
      for (int basis = 0; basis < kNumBases; ++basis) {
        std::binomial_distribution<std::int64_t> split(m, prob[basis]);
        const std::int64_t first = split(rng);
        add_counts(pixel, basis, first, m - first);
      }
      break;
    }
    case ShotsKind::random_basis: {
      std::uniform_int_distribution<int> pick_basis(0, kNumBases - 1);
      std::bernoulli_distribution coin;
      for (std::int64_t event = 0; event < config.shots.total_events;
           ++event) {
        const int basis = (config.schedule == Schedule::cycled)
                              ? static_cast<int>(event % kNumBases)
                              : pick_basis(rng);
        coin.param(std::bernoulli_distribution::param_type(prob[basis]));
        if (coin(rng)) {
          add_counts(pixel, basis, 1, 0);
        } else {
          add_counts(pixel, basis, 0, 1);
        }
      }
      break;
    }
    case ShotsKind::poisson_frames: {
      const double mean =
          config.shots.rate * static_cast<double>(config.shots.frames);
      for (int basis = 0; basis < kNumBases; ++basis) {
        std::poisson_distribution<std::int64_t> draw_total(mean);
        const std::int64_t total = draw_total(rng);
        std::binomial_distribution<std::int64_t> split(total, prob[basis]);
        const std::int64_t first = (total > 0) ? split(rng) : 0;
        add_counts(pixel, basis, first, total - first);
      }
      break;
    }
    case ShotsKind::exact_proportions: {
      const std::int64_t scale = config.shots.proportion_scale;
      for (int basis = 0; basis < kNumBases; ++basis) {
        const std::int64_t first = std::llround(
            static_cast<double>(scale) * prob[basis]);
        add_counts(pixel, basis, first, scale - first);
      }
      break;
    }
  }
  return pixel;
}

void validate(const SimConfig& config) {
  if (config.xs.empty()) {
    throw std::invalid_argument("simulate: empty x grid");
  }
  for (double x : config.xs) {
    if (!config.truth.x_domain().contains(x)) {
      throw std::invalid_argument(
          "simulate: grid point outside the truth x_domain");
    }
  }
  const ShotsMode& shots = config.shots;
  switch (shots.kind) {
    case ShotsKind::fixed_per_setting:
      if (shots.per_setting <= 0) {
        throw std::invalid_argument(
            "simulate: fixed_per_setting requires per_setting > 0");
      }
      break;
    case ShotsKind::random_basis:
      if (shots.total_events <= 0) {
        throw std::invalid_argument(
            "simulate: random_basis requires total_events > 0");
      }
      break;
    case ShotsKind::poisson_frames:
      if (shots.rate <= 0.0 || shots.frames <= 0) {
        throw std::invalid_argument(
            "simulate: poisson_frames requires rate > 0 and frames > 0");
      }
      break;
    case ShotsKind::exact_proportions:
      if (shots.proportion_scale <= 0) {
        throw std::invalid_argument(
            "simulate: exact_proportions requires a positive scale");
      }
      break;
  }
}

}  // namespace

ShotsMode ShotsMode::fixed_per_setting(std::int64_t m) {
  ShotsMode mode;
  mode.kind = ShotsKind::fixed_per_setting;
  mode.per_setting = m;
  return mode;
}

ShotsMode ShotsMode::random_basis(std::int64_t n) {
  ShotsMode mode;
  mode.kind = ShotsKind::random_basis;
  mode.total_events = n;
  return mode;
}

ShotsMode ShotsMode::poisson_frames(double rate, std::int64_t frames) {
  ShotsMode mode;
  mode.kind = ShotsKind::poisson_frames;
  mode.rate = rate;
  mode.frames = frames;
  return mode;
}

ShotsMode ShotsMode::exact_proportions(std::int64_t scale) {
  ShotsMode mode;
  mode.kind = ShotsKind::exact_proportions;
  mode.proportion_scale = scale;
  return mode;
}

double outcome_probability(const PureHypothesis& h, Projector p) {
  // (1 + n_p . n_eta) / 2; the axis is an exact signed unit vector, so the
  // basis pair sums to exactly 1.
  const Vector3d axis = projector_axis(p);
  return 0.5 * (1.0 + axis.dot(bloch_vector(h)));
}

CountTable simulate(const SimConfig& config) {
  validate(config);
  std::vector<PixelCounts> pixels(config.xs.size());
  parallel_for(config.xs.size(), [&](std::size_t i) {
    // One stream per (replicate, pixel): bit-identical output under any
    // thread count, and replicates stay independent.
    std::mt19937_64 rng =
        make_stream(config.seed, config.replicate, static_cast<std::uint64_t>(i));
    pixels[i] = sample_pixel(config, config.xs[i], rng);
  });
  return CountTable::from_pixels(std::move(pixels));
}

TrueProfile bbo_profile(double length_mm, Interval x_domain,
                        double center_phase_per_mm, double slope_per_mm) {
  if (length_mm < 0.0) {
    throw std::invalid_argument("bbo_profile: negative crystal length");
  }
  // phi(x) = pi + L * center_phase + L * slope * (x - mid); theta fixed at
  // the |A> preparation value pi/2.
  const double phi_slope = length_mm * slope_per_mm;
  const double phi0 = kPi + length_mm * center_phase_per_mm -
                      phi_slope * x_domain.midpoint();
  return ProfileModel::affine_in_x(0.5 * kPi, 0.0, phi0, phi_slope, x_domain);
}

}  // namespace shadowfit
