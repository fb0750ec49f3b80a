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
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "shadowfit/profiles.hpp"
#include "testutil.hpp"

using namespace shadowfit;
using testutil::max_entry_diff;

namespace {

// Oracle: the pure state for arbitrary raw angles, built directly from the
// ket without any canonicalization. cos and sin handle any real argument.
DensityOperator state_from_raw_angles(double theta_raw, double phi_raw) {
  Vector2c ket;
  ket << std::cos(0.5 * theta_raw),
      std::exp(std::complex<double>(0.0, phi_raw)) * std::sin(0.5 * theta_raw);
  return DensityOperator::pure(ket);
}

}  // namespace

TEST_CASE("FamilySpec") {
  SECTION("coefficient counts") {
    CHECK(FamilySpec::constant().coefficient_count() == 1);
    CHECK(FamilySpec::affine().coefficient_count() == 2);
    CHECK(FamilySpec::polynomial(3).coefficient_count() == 4);
    CHECK(FamilySpec::polynomial(0).coefficient_count() == 1);
  }

  SECTION("negative polynomial degree is rejected") {
    CHECK_THROWS_AS(FamilySpec::polynomial(-1), std::invalid_argument);
  }

  SECTION("family names") {
    CHECK(family_name(ProfileFamily::constant) == "constant");
    CHECK(family_name(ProfileFamily::affine) == "affine");
    CHECK(family_name(ProfileFamily::polynomial) == "polynomial");
  }
}

TEST_CASE("Interval") {
  const Interval domain{800.0, 820.0};

  SECTION("basic geometry") {
    CHECK(domain.span() == 20.0);
    CHECK(domain.midpoint() == 810.0);
  }

  SECTION("containment with endpoint slack") {
    CHECK(domain.contains(800.0));
    CHECK(domain.contains(820.0));
    CHECK(domain.contains(810.0));
    // Grid endpoints computed in floating point may overshoot by ulps.
    CHECK(domain.contains(820.0 + 1e-9));
    CHECK(domain.contains(800.0 - 1e-9));
    CHECK_FALSE(domain.contains(821.0));
    CHECK_FALSE(domain.contains(799.0));
  }
}

TEST_CASE("canonicalize_angles") {
  SECTION("in-range angles pass through unchanged") {
    const PureHypothesis h = canonicalize_angles(1.0, 5.0);
    CHECK(h.theta == 1.0);
    CHECK(h.phi == 5.0);
  }

  SECTION("negative theta reflects with a pi shift in phi") {
    const PureHypothesis h = canonicalize_angles(-0.1, 0.7);
    CHECK_THAT(h.theta, Catch::Matchers::WithinAbs(0.1, 1e-15));
    CHECK_THAT(h.phi, Catch::Matchers::WithinAbs(0.7 + kPi, 1e-15));
  }

  SECTION("theta above pi reflects back into [0, pi]") {
    const PureHypothesis h = canonicalize_angles(1.5 * kPi, 0.0);
    CHECK_THAT(h.theta, Catch::Matchers::WithinAbs(0.5 * kPi, 1e-12));
    CHECK_THAT(h.phi, Catch::Matchers::WithinAbs(kPi, 1e-15));
  }

  SECTION("full turns in theta drop out") {
    const PureHypothesis h = canonicalize_angles(kTwoPi + 0.3, -2.0);
    CHECK_THAT(h.theta, Catch::Matchers::WithinAbs(0.3, 1e-12));
    CHECK(h.phi == -2.0);
  }

  SECTION("result is always a valid hypothesis") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> wide(-30.0, 30.0);
    for (int i = 0; i < 2000; ++i) {
      const PureHypothesis h = canonicalize_angles(wide(rng), wide(rng));
      CHECK(h.theta >= 0.0);
      CHECK(h.theta <= kPi);
    }
  }
}

TEST_CASE("ProfileModel construction") {
  const Interval domain{0.0, 1.0};

  SECTION("coefficient count must match the family") {
    CHECK_THROWS_AS(ProfileModel(FamilySpec::affine(), {1.0}, {0.0, 0.0},
                                 domain),
                    std::invalid_argument);
    CHECK_THROWS_AS(ProfileModel(FamilySpec::constant(), {1.0}, {0.0, 0.0},
                                 domain),
                    std::invalid_argument);
    CHECK_NOTHROW(ProfileModel(FamilySpec::affine(), {1.0, 0.0}, {0.0, 0.0},
                               domain));
  }

  SECTION("inverted domain is rejected") {
    CHECK_THROWS_AS(ProfileModel::constant(1.0, 0.0, Interval{1.0, 0.0}),
                    std::invalid_argument);
  }

  SECTION("independent per-angle families") {
    const ProfileModel m(FamilySpec::constant(), {1.0}, FamilySpec::affine(),
                         {0.5, 0.25}, domain);
    CHECK(m.theta_family() == FamilySpec::constant());
    CHECK(m.phi_family() == FamilySpec::affine());
    CHECK(m.parameter_count() == 3);
  }
}

TEST_CASE("ProfileModel evaluation") {
  const Interval domain{800.0, 820.0};

  SECTION("constant (pi/2, pi) is the antidiagonal state at every x") {
    const ProfileModel model = ProfileModel::constant(0.5 * kPi, kPi, domain);
    const DensityOperator a_state = projector_state(Projector::A);
    for (double x : {800.0, 805.5, 810.0, 820.0}) {
      const PureHypothesis h = model.evaluate(x);
      CHECK(h.theta == 0.5 * kPi);
      CHECK(h.phi == kPi);
      CHECK(max_entry_diff(model.state_at(x), a_state) < 1e-15);
    }
  }

  SECTION("affine with zero slope equals the constant model exactly") {
    const ProfileModel affine =
        ProfileModel::affine_in_x(1.1, 0.0, 2.3, 0.0, domain);
    const ProfileModel constant = ProfileModel::constant(1.1, 2.3, domain);
    for (int i = 0; i <= 40; ++i) {
      const double x = 800.0 + 0.5 * i;
      CHECK(affine.theta_raw(x) == constant.theta_raw(x));
      CHECK(affine.phi_raw(x) == constant.phi_raw(x));
      CHECK(max_entry_diff(affine.state_at(x), constant.state_at(x)) == 0.0);
    }
  }

  SECTION("affine_in_x reproduces a0 + a1 x") {
    const ProfileModel model =
        ProfileModel::affine_in_x(0.4, 0.002, -16.0, 0.02, domain);
    for (int i = 0; i <= 20; ++i) {
      const double x = 800.0 + i;
      CHECK_THAT(model.theta_raw(x),
                 Catch::Matchers::WithinAbs(0.4 + 0.002 * x, 1e-12));
      CHECK_THAT(model.phi_raw(x),
                 Catch::Matchers::WithinAbs(-16.0 + 0.02 * x, 1e-12));
    }
  }

  SECTION("theta evaluating to -0.1 canonicalizes to (0.1, phi + pi)") {
    // theta(x) = 0.4 - 0.5 u crosses zero; at x = 820 (u = 1) it is -0.1.
    const ProfileModel model(FamilySpec::affine(), {0.4, -0.5}, {1.0, 0.0},
                             domain);
    const PureHypothesis h = model.evaluate(820.0);
    CHECK_THAT(h.theta, Catch::Matchers::WithinAbs(0.1, 1e-12));
    CHECK_THAT(h.phi, Catch::Matchers::WithinAbs(1.0 + kPi, 1e-12));
    CHECK(max_entry_diff(model.state_at(820.0),
                         state_from_raw_angles(-0.1, 1.0)) < 1e-12);
  }

  SECTION("x outside the domain is a domain error") {
    const ProfileModel model = ProfileModel::constant(1.0, 0.0, domain);
    CHECK_THROWS_AS(model.evaluate(790.0), std::domain_error);
    CHECK_THROWS_AS(model.evaluate(830.0), std::domain_error);
    CHECK_NOTHROW(model.evaluate(820.0 + 1e-10));
  }

  SECTION("degenerate single-point domain evaluates the constant term") {
    const ProfileModel model(FamilySpec::affine(), {1.25, 99.0}, {0.5, -7.0},
                             Interval{810.0, 810.0});
    CHECK(model.theta_raw(810.0) == 1.25);
    CHECK(model.phi_raw(810.0) == 0.5);
  }

  SECTION("cubic polynomial matches direct Horner evaluation") {
    const std::vector<double> tc{0.9, 0.3, -0.2, 0.05};
    const std::vector<double> pc{2.0, -1.0, 0.4, 0.1};
    const ProfileModel model(FamilySpec::polynomial(3), tc, pc, domain);
    for (int i = 0; i <= 10; ++i) {
      const double x = 800.0 + 2.0 * i;
      const double u = (x - 810.0) / 10.0;
      const double expect_t = tc[0] + u * (tc[1] + u * (tc[2] + u * tc[3]));
      const double expect_p = pc[0] + u * (pc[1] + u * (pc[2] + u * pc[3]));
      CHECK_THAT(model.theta_raw(x),
                 Catch::Matchers::WithinAbs(expect_t, 1e-14));
      CHECK_THAT(model.phi_raw(x),
                 Catch::Matchers::WithinAbs(expect_p, 1e-14));
    }
  }
}

TEST_CASE("ProfileModel state-level invariants") {
  SECTION("phi shifted by 2 pi yields the same density operator") {
    const Interval domain{0.0, 10.0};
    std::mt19937_64 rng(72);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
      const ProfileModel model(FamilySpec::affine(),
                               {coeff(rng), coeff(rng)},
                               {coeff(rng), coeff(rng)}, domain);
      std::vector<double> shifted = model.pack();
      shifted[2] += kTwoPi;  // constant term of phi
      const ProfileModel twin = model.with_parameters(shifted);
      const double x = 10.0 * (trial % 11) / 10.0;
      CHECK(max_entry_diff(model.state_at(x), twin.state_at(x)) < 1e-12);
    }
  }

  SECTION("canonicalization never changes the physical state") {
    const Interval domain{-1.0, 1.0};
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> coeff(-8.0, 8.0);
    std::uniform_real_distribution<double> point(-1.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
      const ProfileModel model(FamilySpec::affine(),
                               {coeff(rng), coeff(rng)},
                               {coeff(rng), coeff(rng)}, domain);
      const double x = point(rng);
      const DensityOperator canonical = model.state_at(x);
      const DensityOperator raw =
          state_from_raw_angles(model.theta_raw(x), model.phi_raw(x));
      CHECK(max_entry_diff(canonical, raw) < 1e-12);
    }
  }
}

TEST_CASE("ProfileModel pack and with_parameters") {
  const Interval domain{0.0, 1.0};

  SECTION("round trip is the identity") {
    const ProfileModel model(FamilySpec::polynomial(2), {0.1, 0.2, 0.3},
                             {0.4, 0.5, 0.6}, domain);
    const std::vector<double> flat = model.pack();
    REQUIRE(flat == std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    CHECK(model.with_parameters(flat) == model);
  }

  SECTION("parameter counts per family") {
    CHECK(ProfileModel::constant(1.0, 2.0, domain).parameter_count() == 2);
    CHECK(ProfileModel::affine_in_x(1, 0, 2, 0, domain).parameter_count() ==
          4);
    CHECK(ProfileModel(FamilySpec::polynomial(3), {0, 0, 0, 0}, {0, 0, 0, 0},
                       domain)
              .parameter_count() == 8);
  }

  SECTION("wrong parameter count is rejected") {
    const ProfileModel model = ProfileModel::constant(1.0, 2.0, domain);
    const std::vector<double> too_long{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(model.with_parameters(too_long), std::invalid_argument);
  }

  SECTION("with_parameters replaces both angle blocks") {
    const ProfileModel model =
        ProfileModel::affine_in_x(1.0, 0.1, 2.0, 0.2, domain);
    const std::vector<double> params{9.0, 8.0, 7.0, 6.0};
    const ProfileModel out = model.with_parameters(params);
    CHECK(out.theta_coefficients() == std::vector<double>{9.0, 8.0});
    CHECK(out.phi_coefficients() == std::vector<double>{7.0, 6.0});
    CHECK(out.x_domain() == model.x_domain());
    CHECK(out.theta_family() == model.theta_family());
  }
}

TEST_CASE("ProfileModel JSON serialization") {
  const Interval domain{800.0, 820.0};

  SECTION("round trip preserves every field to 1e-12") {
    std::mt19937_64 rng(74);
    std::uniform_real_distribution<double> coeff(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
      const ProfileModel model(FamilySpec::polynomial(3),
                               {coeff(rng), coeff(rng), coeff(rng),
                                coeff(rng)},
                               {coeff(rng), coeff(rng), coeff(rng),
                                coeff(rng)},
                               domain);
      const ProfileModel back =
          profile_model_from_json(profile_model_to_json(model));
      REQUIRE(back.theta_family() == model.theta_family());
      REQUIRE(back.phi_family() == model.phi_family());
      REQUIRE(back.x_domain() == model.x_domain());
      for (int i = 0; i < 4; ++i) {
        CHECK_THAT(back.theta_coefficients()[i],
                   Catch::Matchers::WithinAbs(model.theta_coefficients()[i],
                                              1e-12));
        CHECK_THAT(back.phi_coefficients()[i],
                   Catch::Matchers::WithinAbs(model.phi_coefficients()[i],
                                              1e-12));
      }
    }
  }

  SECTION("shortest round-trip serialization is exact for these tests") {
    const ProfileModel model =
        ProfileModel::affine_in_x(0.4, 0.002, -16.0, 0.02, domain);
    const ProfileModel back =
        profile_model_from_json(profile_model_to_json(model));
    CHECK(back == model);
  }

  SECTION("mixed families use the phi_family extension keys") {
    const ProfileModel model(FamilySpec::constant(), {1.0},
                             FamilySpec::affine(), {0.5, 0.1}, domain);
    const std::string text = profile_model_to_json(model);
    CHECK(text.find("phi_family") != std::string::npos);
    CHECK(text.find("phi_degree") != std::string::npos);
    CHECK(profile_model_from_json(text) == model);
  }

  SECTION("shared-family serialization omits the extension keys") {
    const ProfileModel model = ProfileModel::constant(1.0, 2.0, domain);
    const std::string text = profile_model_to_json(model);
    CHECK(text.find("phi_family") == std::string::npos);
  }

  SECTION("malformed documents are rejected") {
    CHECK_THROWS_AS(profile_model_from_json("not json"),
                    std::invalid_argument);
    CHECK_THROWS_AS(profile_model_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(
        profile_model_from_json(
            R"({"family":"affine","degree":1,"theta_params":[0,0],)"
            R"("phi_params":[0,0],"x_domain":[0,1,2]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        profile_model_from_json(
            R"({"family":"spline","degree":1,"theta_params":[0,0],)"
            R"("phi_params":[0,0],"x_domain":[0,1]})"),
        std::invalid_argument);
    // Degree inconsistent with a named family.
    CHECK_THROWS_AS(
        profile_model_from_json(
            R"({"family":"constant","degree":2,"theta_params":[0,0,0],)"
            R"("phi_params":[0,0,0],"x_domain":[0,1]})"),
        std::invalid_argument);
    // phi_family without phi_degree.
    CHECK_THROWS_AS(
        profile_model_from_json(
            R"({"family":"constant","degree":0,"phi_family":"affine",)"
            R"("theta_params":[0],"phi_params":[0],"x_domain":[0,1]})"),
        std::invalid_argument);
  }
}
