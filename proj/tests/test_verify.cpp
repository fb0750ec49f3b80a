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

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "shadowfit/verify.hpp"

using namespace shadowfit;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * i / (n - 1);
  }
  return xs;
}

const Interval kDomain{800.0, 820.0};

SimConfig sampled_config(const TrueProfile& truth, int n_x,
                         std::int64_t events_per_x, std::uint64_t seed) {
  SimConfig config;
  config.truth = truth;
  config.xs = grid(kDomain.lo, kDomain.hi, n_x);
  config.shots = ShotsMode::random_basis(events_per_x);
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("verify_unbiasedness") {
  SECTION("exact proportions give a zero-SEM exact pass") {
    SimConfig config;
    config.truth = bbo_profile(2.0, kDomain);
    config.xs = grid(kDomain.lo, kDomain.hi, 8);
    config.shots = ShotsMode::exact_proportions();
    config.seed = 201;
    const ProfileModel hypothesis =
        ProfileModel::affine_in_x(1.3, 0.01, 2.0, 0.04, kDomain);

    const VerificationReport report =
        verify_unbiasedness(config, hypothesis, 100);
    CHECK(report.name == "unbiasedness");
    CHECK(report.passed);
    CHECK(report.std_error == 0.0);
    CHECK(std::abs(report.estimate - report.reference) <= 1e-10);
    CHECK(report.replicates == 100);
    CHECK_FALSE(report.is_upper_bound);
  }

  SECTION("matched antidiagonal truth and hypothesis: mean loss near 0") {
    const TrueProfile truth =
        ProfileModel::constant(0.5 * kPi, kPi, kDomain);
    const SimConfig config = sampled_config(truth, 10, 100, 202);
    const VerificationReport report =
        verify_unbiasedness(config, truth, 300);
    CHECK(report.passed);
    CHECK_THAT(report.reference, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK(std::abs(report.estimate) <= 4.0 * report.std_error);
  }

  SECTION("orthogonal truth and hypothesis: mean loss near 1") {
    const TrueProfile truth = ProfileModel::constant(0.0, 0.0, kDomain);
    const ProfileModel hypothesis =
        ProfileModel::constant(kPi, 0.0, kDomain);
    const SimConfig config = sampled_config(truth, 10, 100, 203);
    const VerificationReport report =
        verify_unbiasedness(config, hypothesis, 300);
    CHECK(report.passed);
    CHECK_THAT(report.reference, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK(std::abs(report.estimate - 1.0) <= 4.0 * report.std_error);
  }

  SECTION("the deliberately unnormalized loss fails the check") {
    const TrueProfile truth = bbo_profile(2.0, kDomain);
    const ProfileModel hypothesis =
        ProfileModel::constant(0.5 * kPi, 0.0, kDomain);
    const SimConfig config = sampled_config(truth, 8, 120, 204);
    VerifyOptions options;
    options.biased_loss_null = true;
    const VerificationReport biased =
        verify_unbiasedness(config, hypothesis, 200, options);
    CHECK_FALSE(biased.passed);
    // The honest estimator on the same data passes.
    const VerificationReport honest =
        verify_unbiasedness(config, hypothesis, 200);
    CHECK(honest.passed);
  }

  SECTION("verdicts are deterministic") {
    const TrueProfile truth = bbo_profile(1.0, kDomain);
    const SimConfig config = sampled_config(truth, 6, 60, 205);
    const VerificationReport a = verify_unbiasedness(config, truth, 150);
    const VerificationReport b = verify_unbiasedness(config, truth, 150);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    CHECK(a.passed == b.passed);
  }

  SECTION("fewer than 100 replicates is a precondition error") {
    const TrueProfile truth = bbo_profile(1.0, kDomain);
    const SimConfig config = sampled_config(truth, 4, 40, 206);
    CHECK_THROWS_AS(verify_unbiasedness(config, truth, 99),
                    std::invalid_argument);
  }
}

TEST_CASE("verify_variance_bound") {
  SECTION("matched pure constant profiles freeze the bound at 3/4") {
    // eta - I/2 has squared shadow norm 3/4 whenever the state equals the
    // hypothesis, matching the sigma_z/2 enumeration cross-check.
    const TrueProfile truth = ProfileModel::constant(0.0, 0.0, kDomain);
    const SimConfig config = sampled_config(truth, 5, 100, 211);
    const VerificationReport report = verify_variance_bound(config, truth);
    CHECK(report.name == "variance_bound");
    CHECK(report.is_upper_bound);
    CHECK_THAT(report.reference, Catch::Matchers::WithinAbs(0.75, 1e-12));
    CHECK(report.passed);
    CHECK(report.estimate > 0.0);
    CHECK(report.std_error > 0.0);
    CHECK(report.estimate <= report.reference + 5.0 * report.std_error);
  }

  SECTION("holds for a mismatched hypothesis as well") {
    const TrueProfile truth = bbo_profile(2.0, kDomain);
    const ProfileModel hypothesis =
        ProfileModel::constant(0.25 * kPi, 1.0, kDomain);
    const SimConfig config = sampled_config(truth, 8, 100, 212);
    const VerificationReport report =
        verify_variance_bound(config, hypothesis);
    CHECK(report.passed);
    CHECK(report.reference > 0.0);
  }

  SECTION("exact proportions short-circuit to zero variance") {
    SimConfig config;
    config.truth = bbo_profile(2.0, kDomain);
    config.xs = grid(kDomain.lo, kDomain.hi, 8);
    config.shots = ShotsMode::exact_proportions();
    config.seed = 213;
    const VerificationReport report =
        verify_variance_bound(config, config.truth);
    CHECK(report.passed);
    CHECK(report.estimate == 0.0);
    CHECK(report.std_error == 0.0);
  }

  SECTION("verdicts are deterministic") {
    const TrueProfile truth = bbo_profile(1.5, kDomain);
    const SimConfig config = sampled_config(truth, 6, 50, 214);
    const VerificationReport a = verify_variance_bound(config, truth);
    const VerificationReport b = verify_variance_bound(config, truth);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
  }

  SECTION("precondition errors") {
    const TrueProfile truth = bbo_profile(1.0, kDomain);
    SimConfig config = sampled_config(truth, 4, 40, 215);
    VerifyOptions options;
    options.variance_events = 999;
    CHECK_THROWS_AS(verify_variance_bound(config, truth, options),
                    std::invalid_argument);
    config.xs.clear();
    CHECK_THROWS_AS(verify_variance_bound(config, truth),
                    std::invalid_argument);
  }
}

TEST_CASE("verify_sample_scaling") {
  const TrueProfile truth = bbo_profile(2.0, kDomain);
  const ProfileModel hypothesis =
      ProfileModel::constant(0.5 * kPi, kPi, kDomain);
  SimConfig config;
  config.truth = truth;
  config.xs = grid(kDomain.lo, kDomain.hi, 4);
  config.seed = 221;
  const std::vector<long> t_values{100, 1000, 10000};

  SECTION("slope lands in the window around -1/2") {
    const VerificationReport report =
        verify_sample_scaling(config, hypothesis, t_values, 300);
    CHECK(report.name == "sample_scaling");
    CHECK(report.reference == -0.5);
    CHECK(report.passed);
    CHECK(report.estimate >= -0.62);
    CHECK(report.estimate <= -0.38);
  }

  SECTION("doubling the replicates keeps the verdict") {
    const VerificationReport base =
        verify_sample_scaling(config, hypothesis, t_values, 300);
    const VerificationReport doubled =
        verify_sample_scaling(config, hypothesis, t_values, 600);
    CHECK(base.passed);
    CHECK(doubled.passed);
  }

  SECTION("precondition errors") {
    const std::vector<long> too_few{100, 10000};
    CHECK_THROWS_AS(
        verify_sample_scaling(config, hypothesis, too_few, 100),
        std::invalid_argument);

    const std::vector<long> narrow{100, 400, 1600};
    CHECK_THROWS_AS(
        verify_sample_scaling(config, hypothesis, narrow, 100),
        std::invalid_argument);

    const std::vector<long> indivisible{100, 1000, 10002};
    CHECK_THROWS_AS(
        verify_sample_scaling(config, hypothesis, indivisible, 100),
        std::invalid_argument);

    const std::vector<long> nonpositive{0, 1000, 10000};
    CHECK_THROWS_AS(
        verify_sample_scaling(config, hypothesis, nonpositive, 100),
        std::invalid_argument);

    CHECK_THROWS_AS(
        verify_sample_scaling(config, hypothesis, t_values, 1),
        std::invalid_argument);
  }
}
