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

#include "shadowfit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "shadowfit/parallel.hpp"
#include "shadowfit/rng.hpp"
#include "shadowfit/shadows.hpp"

namespace shadowfit {
namespace {

double population_loss(const SimConfig& config,
                       const ProfileModel& hypothesis) {
  const std::vector<double> weights(
      config.xs.size(), 1.0 / static_cast<double>(config.xs.size()));
  return true_loss(config.truth, hypothesis, config.xs, weights);
}

// Global loss, optionally with the normalization deliberately removed (the
// negative-control null for the unbiasedness check).
double replicate_loss(const CountTable& table, const ProfileModel& hypothesis,
                      bool biased) {
  const double loss = fcs_loss(table, hypothesis);
  if (!biased) {
    return loss;
  }
  return loss * static_cast<double>(table.occupied_xs().size());
}

struct MeanSem {
  double mean = 0.0;
  double sem = 0.0;
};

MeanSem mean_and_sem(const std::vector<double>& values) {
  // A constant sample has zero variance by definition. Detect it exactly:
  // going through the accumulated mean would manufacture rounding noise and
  // misclassify deterministic estimators as stochastic ones.
  if (!values.empty() &&
      std::all_of(values.begin(), values.end(),
                  [&](double v) { return v == values.front(); })) {
    return {values.front(), 0.0};
  }
  const double n = static_cast<double>(values.size());
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) {
    ss += (v - mean) * (v - mean);
  }
  if (values.size() < 2) {
    return {mean, 0.0};
  }
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

VerificationReport verify_unbiasedness(const SimConfig& config,
                                       const ProfileModel& hypothesis,
                                       long replicates,
                                       const VerifyOptions& options) {
  if (replicates < 100) {
    throw std::invalid_argument(
        "verify_unbiasedness: at least 100 replicates required");
  }
  std::vector<double> losses(static_cast<std::size_t>(replicates));
  parallel_for(losses.size(), [&](std::size_t r) {
    SimConfig cfg = config;
    cfg.replicate = config.replicate + r;
    losses[r] = replicate_loss(simulate(cfg), hypothesis,
                               options.biased_loss_null);
  });

  const MeanSem stats = mean_and_sem(losses);
  const double target = population_loss(config, hypothesis);
  const double deviation = std::abs(stats.mean - target);

  VerificationReport report;
  report.name = "unbiasedness";
  report.estimate = stats.mean;
  report.std_error = stats.sem;
  report.reference = target;
  report.is_upper_bound = false;
  report.replicates = replicates;
  report.seed = config.seed;
  if (stats.sem == 0.0) {
    // Deterministic estimator (exact proportions): compare directly.
    report.passed = deviation <= options.exact_tolerance;
  } else {
    report.passed = deviation <= options.mean_sigmas * stats.sem;
  }
  {
    std::ostringstream detail;
    detail << "|mean - true| = " << deviation << ", allowance = "
           << (stats.sem == 0.0 ? options.exact_tolerance
                                : options.mean_sigmas * stats.sem);
    report.detail = detail.str();
  }
  return report;
}

VerificationReport verify_variance_bound(const SimConfig& config,
                                         const ProfileModel& hypothesis,
                                         const VerifyOptions& options) {
  if (config.xs.empty()) {
    throw std::invalid_argument("verify_variance_bound: empty x grid");
  }

  // Bound: max over the grid of the squared shadow norm of the centered
  // hypothesis. All pure hypotheses have unit trace, so the centering is
  // eta - I/2; computed from the actual mean trace for generality.
  double mean_trace = 0.0;
  std::vector<DensityOperator> eta;
  std::vector<PureHypothesis> hyp;
  std::vector<PureHypothesis> truth;
  eta.reserve(config.xs.size());
  for (double x : config.xs) {
    hyp.push_back(hypothesis.evaluate(x));
    truth.push_back(config.truth.evaluate(x));
    eta.push_back(density_from_hypothesis(hyp.back()));
    mean_trace += eta.back().trace();
  }
  mean_trace /= static_cast<double>(config.xs.size());

  double bound = 0.0;
  for (std::size_t i = 0; i < config.xs.size(); ++i) {
    const DensityOperator centered =
        eta[i] - DensityOperator::identity() * (0.5 * mean_trace);
    const DensityOperator rho =
        density_from_hypothesis(truth[i]);
    bound = std::max(bound, shadow_norm_sq(centered, rho));
  }

  VerificationReport report;
  report.name = "variance_bound";
  report.reference = bound;
  report.is_upper_bound = true;
  report.seed = config.seed;

  if (config.shots.kind == ShotsKind::exact_proportions) {
    // No per-event randomness: the estimator is deterministic.
    report.estimate = 0.0;
    report.std_error = 0.0;
    report.replicates = 0;
    report.passed = true;
    report.detail = "deterministic estimator; variance is exactly 0";
    return report;
  }

  // Monte-Carlo single events from the iid model: x uniform on the grid,
  // basis uniform, outcome Born-distributed. Fixed chunking keeps the draw
  // sequence independent of the thread count.
  const long n_events = options.variance_events;
  if (n_events < 1000) {
    throw std::invalid_argument(
        "verify_variance_bound: at least 1000 events required");
  }
  std::vector<double> losses(static_cast<std::size_t>(n_events));
  const std::size_t chunks = 64;
  parallel_for(chunks, [&](std::size_t chunk) {
    std::mt19937_64 rng = make_stream(config.seed, config.replicate,
                                      0x76617269616e6365ull + chunk);
    std::uniform_int_distribution<std::size_t> pick_x(0,
                                                      config.xs.size() - 1);
    std::uniform_int_distribution<int> pick_basis(0, kNumBases - 1);
    const std::size_t begin = losses.size() * chunk / chunks;
    const std::size_t end = losses.size() * (chunk + 1) / chunks;
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t ix = pick_x(rng);
      const int basis = pick_basis(rng);
      const Projector first = projector_at(basis, 0);
      const double p_first =
          std::clamp(outcome_probability(truth[ix], first), 0.0, 1.0);
      std::bernoulli_distribution coin(p_first);
      const Projector outcome = coin(rng) ? first : basis_partner(first);
      losses[i] = 1.0 - snapshot_fidelity(hyp[ix], outcome);
    }
  });

  // Sample variance and its asymptotic standard error via the fourth
  // central moment.
  const double n = static_cast<double>(losses.size());
  const double mean =
      std::accumulate(losses.begin(), losses.end(), 0.0) / n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : losses) {
    const double d = v - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  const double variance = m2 * n / (n - 1.0);
  const double se =
      std::sqrt(std::max(0.0, m4 - m2 * m2 * (n - 3.0) / (n - 1.0)) / n);

  report.estimate = variance;
  report.std_error = se;
  report.replicates = n_events;
  report.passed = variance <= bound + options.variance_sigmas * se;
  {
    std::ostringstream detail;
    detail << "variance = " << variance << ", bound = " << bound
           << ", allowance = " << options.variance_sigmas * se;
    report.detail = detail.str();
  }
  return report;
}

VerificationReport verify_sample_scaling(const SimConfig& config,
                                         const ProfileModel& hypothesis,
                                         std::span<const long> total_events,
                                         long replicates,
                                         const VerifyOptions& options) {
  if (total_events.size() < 3) {
    throw std::invalid_argument(
        "verify_sample_scaling: need at least three T values");
  }
  long t_min = total_events[0];
  long t_max = total_events[0];
  for (long t : total_events) {
    if (t <= 0) {
      throw std::invalid_argument("verify_sample_scaling: T must be positive");
    }
    if (t % static_cast<long>(config.xs.size()) != 0) {
      throw std::invalid_argument(
          "verify_sample_scaling: each T must be divisible by the grid size");
    }
    t_min = std::min(t_min, t);
    t_max = std::max(t_max, t);
  }
  if (t_max < 100 * t_min) {
    throw std::invalid_argument(
        "verify_sample_scaling: T values must span at least two decades");
  }
  if (replicates < 2) {
    throw std::invalid_argument(
        "verify_sample_scaling: at least 2 replicates required");
  }

  const double target = population_loss(config, hypothesis);
  std::vector<double> log_t;
  std::vector<double> log_rms;
  std::ostringstream detail;
  detail << "rms by T:";
  for (std::size_t ti = 0; ti < total_events.size(); ++ti) {
    const long t = total_events[ti];
    SimConfig base = config;
    base.shots =
        ShotsMode::random_basis(t / static_cast<long>(config.xs.size()));
    std::vector<double> sq(static_cast<std::size_t>(replicates));
    parallel_for(sq.size(), [&](std::size_t r) {
      SimConfig cfg = base;
      // Decorrelate the T points from one another.
      cfg.replicate = config.replicate + ti * static_cast<std::size_t>(replicates) + r;
      const double loss = fcs_loss(simulate(cfg), hypothesis);
      sq[r] = (loss - target) * (loss - target);
    });
    const double rms = std::sqrt(
        std::accumulate(sq.begin(), sq.end(), 0.0) / static_cast<double>(replicates));
    log_t.push_back(std::log(static_cast<double>(t)));
    log_rms.push_back(std::log(rms));
    detail << " (" << t << ", " << rms << ")";
  }

  // Least-squares slope of log(rms) on log(T) with its standard error.
  const double k = static_cast<double>(log_t.size());
  const double mx = std::accumulate(log_t.begin(), log_t.end(), 0.0) / k;
  const double my = std::accumulate(log_rms.begin(), log_rms.end(), 0.0) / k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < log_t.size(); ++i) {
    sxx += (log_t[i] - mx) * (log_t[i] - mx);
    sxy += (log_t[i] - mx) * (log_rms[i] - my);
  }
  const double slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < log_t.size(); ++i) {
    const double fit = my + slope * (log_t[i] - mx);
    ss_res += (log_rms[i] - fit) * (log_rms[i] - fit);
  }
  const double se_slope =
      (log_t.size() > 2) ? std::sqrt(ss_res / (k - 2.0) / sxx) : 0.0;

  VerificationReport report;
  report.name = "sample_scaling";
  report.estimate = slope;
  report.std_error = se_slope;
  report.reference = -0.5;
  report.is_upper_bound = false;
  report.replicates = replicates;
  report.seed = config.seed;
  report.passed = slope >= options.slope_lo && slope <= options.slope_hi;
  detail << "; window [" << options.slope_lo << ", " << options.slope_hi
         << "]";
  report.detail = detail.str();
  return report;
}

}  // namespace shadowfit
