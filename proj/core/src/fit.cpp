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

#include "shadowfit/fit.hpp"

#include <cmath>
#include <stdexcept>

#include "shadowfit/parallel.hpp"
#include "shadowfit/rng.hpp"

namespace shadowfit {
namespace {

// Least-squares fit of one angle's polynomial coefficients. Columns are
// monomials of the rescaled coordinate; rank deficiency (fewer points than
// coefficients) resolves through the column-pivoted QR.
std::vector<double> least_squares_coefficients(
    const std::vector<double>& us, const std::vector<double>& values,
    int coefficient_count) {
  Eigen::MatrixXd design(us.size(), coefficient_count);
  for (std::size_t r = 0; r < us.size(); ++r) {
    double monomial = 1.0;
    for (int c = 0; c < coefficient_count; ++c) {
      design(static_cast<Eigen::Index>(r), c) = monomial;
      monomial *= us[r];
    }
  }
  Eigen::VectorXd rhs(values.size());
  for (std::size_t r = 0; r < values.size(); ++r) {
    rhs(static_cast<Eigen::Index>(r)) = values[r];
  }
  const Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);
  return std::vector<double>(sol.data(), sol.data() + sol.size());
}

std::vector<CsPointEstimate> pointwise_estimates(const CountTable& table,
                                                 const FitOptions& options) {
  std::vector<CsPointEstimate> points;
  for (const PixelCounts& pixel : table.pixels()) {
    if (pixel.total() == 0) {
      continue;
    }
    points.push_back(
        cs_pointwise_fit(table, pixel.x, options.tie_threshold));
  }
  if (points.empty()) {
    throw std::invalid_argument("fit: table has no occupied x");
  }
  // Continue the phases along increasing x, skipping degenerate pixels
  // whose phase carries no information.
  std::vector<double> wrapped;
  wrapped.reserve(points.size());
  for (const CsPointEstimate& p : points) {
    if (!p.degenerate) {
      wrapped.push_back(p.hypothesis.phi);
    }
  }
  const std::vector<double> unwrapped = unwrap_phases(wrapped);
  std::size_t k = 0;
  for (CsPointEstimate& p : points) {
    if (!p.degenerate) {
      p.phi_unwrapped = unwrapped[k++];
    }
  }
  return points;
}

std::vector<IdentifiabilityFlag> collect_flags(
    const std::vector<CsPointEstimate>& points,
    const std::function<double(const CsPointEstimate&)>& theta_of,
    const FitOptions& options) {
  std::vector<IdentifiabilityFlag> flags;
  for (const CsPointEstimate& p : points) {
    const double theta = theta_of(p);
    IdentifiabilityFlag flag;
    flag.x = p.x;
    flag.near_pole = theta < options.pole_threshold ||
                     theta > kPi - options.pole_threshold;
    flag.weak_signal = p.bloch_norm < options.weak_signal_threshold;
    if (flag.near_pole || flag.weak_signal) {
      flags.push_back(flag);
    }
  }
  return flags;
}

}  // namespace

std::vector<double> unwrap_phases(std::span<const double> wrapped) {
  std::vector<double> out;
  out.reserve(wrapped.size());
  if (wrapped.empty()) {
    return out;
  }
  out.push_back(std::remainder(wrapped[0], kTwoPi));
  for (std::size_t i = 1; i < wrapped.size(); ++i) {
    double step = std::remainder(wrapped[i] - out.back(), kTwoPi);
    if (step == kPi || step == -kPi) {
      // Exact half-turn: both branches are nearest; wind toward zero.
      step = (out.back() > 0.0) ? -kPi : kPi;
    }
    out.push_back(out.back() + step);
  }
  return out;
}

ProfileModel cs_seed_model(const CountTable& table, FamilySpec theta_family,
                           FamilySpec phi_family, Interval x_domain,
                           const FitOptions& options) {
  const std::vector<CsPointEstimate> points =
      pointwise_estimates(table, options);

  const double half = 0.5 * x_domain.span();
  const double mid = x_domain.midpoint();
  std::vector<double> us;
  std::vector<double> thetas;
  std::vector<double> phis;
  for (const CsPointEstimate& p : points) {
    if (p.degenerate) {
      continue;
    }
    us.push_back(half > 0.0 ? (p.x - mid) / half : 0.0);
    thetas.push_back(p.hypothesis.theta);
    phis.push_back(p.phi_unwrapped);
  }

  std::vector<double> theta_coeffs(theta_family.coefficient_count(), 0.0);
  std::vector<double> phi_coeffs(phi_family.coefficient_count(), 0.0);
  if (us.empty()) {
    // Every pixel degenerate: start from the equator, where the optimizer
    // sees nonzero gradients in both angles.
    theta_coeffs[0] = 0.5 * kPi;
  } else {
    theta_coeffs = least_squares_coefficients(
        us, thetas, theta_family.coefficient_count());
    phi_coeffs =
        least_squares_coefficients(us, phis, phi_family.coefficient_count());
  }
  return ProfileModel(theta_family, std::move(theta_coeffs), phi_family,
                      std::move(phi_coeffs), x_domain);
}

FitReport fit_cs(const CountTable& table, const FitOptions& options) {
  FitReport report;
  report.method = "cs";
  report.points = pointwise_estimates(table, options);

  double loss_sum = 0.0;
  for (const CsPointEstimate& p : report.points) {
    const double loss = local_cs_loss(table, p.x, p.hypothesis);
    report.per_x_loss.push_back(PerXLoss{p.x, loss});
    loss_sum += loss;
  }
  report.global_loss = loss_sum / static_cast<double>(report.points.size());
  report.diagnostics.converged = true;
  report.flags = collect_flags(
      report.points,
      [](const CsPointEstimate& p) { return p.hypothesis.theta; }, options);
  return report;
}

FitReport fit_fcs(const CountTable& table, FamilySpec family,
                  const FitOptions& options) {
  return fit_fcs(table, family, family, options);
}

FitReport fit_fcs(const CountTable& table, FamilySpec theta_family,
                  FamilySpec phi_family, const FitOptions& options) {
  if (options.restarts < 1) {
    throw std::invalid_argument("fit_fcs: restarts must be >= 1");
  }
  const std::vector<double> xs = table.occupied_xs();
  if (xs.empty()) {
    throw std::invalid_argument("fit: table has no occupied x");
  }
  const Interval domain{xs.front(), xs.back()};
  const ProfileModel seed =
      cs_seed_model(table, theta_family, phi_family, domain, options);

  const auto objective = [&](std::span<const double> params) {
    return fcs_loss(table, seed.with_parameters(params));
  };

  // Fixed start list: the seed itself plus seeded Gaussian perturbations.
  const std::vector<double> seed_params = seed.pack();
  std::vector<std::vector<double>> starts(
      static_cast<std::size_t>(options.restarts), seed_params);
  for (std::size_t k = 1; k < starts.size(); ++k) {
    std::mt19937_64 rng = make_stream(options.seed, k, 0);
    std::normal_distribution<double> noise(0.0, options.restart_scale);
    for (double& param : starts[k]) {
      param += noise(rng);
    }
  }

  NelderMeadOptions nm;
  nm.max_iterations = options.max_iterations;
  nm.f_tolerance = options.loss_tolerance;
  nm.x_tolerance = options.simplex_tolerance;

  std::vector<NelderMeadResult> results(starts.size());
  const auto run_start = [&](std::size_t k) {
    results[k] = nelder_mead_minimize(objective, starts[k], nm);
  };
  if (options.parallel_restarts) {
    parallel_for(starts.size(), run_start);
  } else {
    for (std::size_t k = 0; k < starts.size(); ++k) {
      run_start(k);
    }
  }

  // Sequential reduction; strict improvement keeps the lowest start index
  // on ties, so the winner is independent of scheduling.
  FitReport report;
  report.method = "fcs";
  std::size_t best = 0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    report.diagnostics.iterations += results[k].iterations;
    report.diagnostics.function_evaluations += results[k].evaluations;
    report.diagnostics.converged =
        report.diagnostics.converged || results[k].converged;
    if (results[k].best_value < results[best].best_value) {
      best = k;
    }
  }
  report.diagnostics.restarts = options.restarts;

  const ProfileModel fitted = seed.with_parameters(results[best].best);
  report.model = fitted;
  report.global_loss = fcs_loss(table, fitted);

  const std::vector<CsPointEstimate> points =
      pointwise_estimates(table, options);
  for (const CsPointEstimate& p : points) {
    report.per_x_loss.push_back(
        PerXLoss{p.x, local_cs_loss(table, p.x, fitted.evaluate(p.x))});
  }
  report.flags = collect_flags(
      points,
      [&](const CsPointEstimate& p) { return fitted.evaluate(p.x).theta; },
      options);
  return report;
}

}  // namespace shadowfit
