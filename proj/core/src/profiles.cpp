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

#include "shadowfit/profiles.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace shadowfit {
namespace {

using ordered_json = nlohmann::ordered_json;

ProfileFamily family_from_name(const std::string& name) {
  if (name == "constant") return ProfileFamily::constant;
  if (name == "affine") return ProfileFamily::affine;
  if (name == "polynomial") return ProfileFamily::polynomial;
  throw std::invalid_argument("unknown profile family: " + name);
}

FamilySpec spec_from(ProfileFamily family, int degree) {
  switch (family) {
    case ProfileFamily::constant:
      if (degree != 0) {
        throw std::invalid_argument("constant family requires degree 0");
      }
      return FamilySpec::constant();
    case ProfileFamily::affine:
      if (degree != 1) {
        throw std::invalid_argument("affine family requires degree 1");
      }
      return FamilySpec::affine();
    case ProfileFamily::polynomial:
      return FamilySpec::polynomial(degree);
  }
  throw std::invalid_argument("invalid profile family");
}

}  // namespace

std::string_view family_name(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::constant:
      return "constant";
    case ProfileFamily::affine:
      return "affine";
    case ProfileFamily::polynomial:
      return "polynomial";
  }
  throw std::invalid_argument("invalid profile family");
}

FamilySpec FamilySpec::polynomial(int k) {
  if (k < 0) {
    throw std::invalid_argument("polynomial degree must be nonnegative");
  }
  return {ProfileFamily::polynomial, k};
}

bool Interval::contains(double x) const {
  const double slack = 1e-9 * std::max(1.0, std::abs(span()));
  return x >= lo - slack && x <= hi + slack;
}

PureHypothesis canonicalize_angles(double theta_raw, double phi_raw) {
  double t = std::fmod(theta_raw, kTwoPi);
  if (t < 0.0) {
    t += kTwoPi;
  }
  if (t > kPi) {
    // Reflection theta -> 2 pi - theta with phi -> phi + pi fixes the state:
    // cos(-t/2) = cos(t/2) and e^{i(p+pi)} sin(-t/2) = e^{ip} sin(t/2).
    return PureHypothesis{kTwoPi - t, phi_raw + kPi};
  }
  return PureHypothesis{t, phi_raw};
}

ProfileModel::ProfileModel(FamilySpec family, std::vector<double> theta_coeffs,
                           std::vector<double> phi_coeffs, Interval x_domain)
    : ProfileModel(family, std::move(theta_coeffs), family,
                   std::move(phi_coeffs), x_domain) {}

ProfileModel::ProfileModel(FamilySpec theta_family,
                           std::vector<double> theta_coeffs,
                           FamilySpec phi_family,
                           std::vector<double> phi_coeffs, Interval x_domain)
    : theta_family_(theta_family),
      phi_family_(phi_family),
      theta_(std::move(theta_coeffs)),
      phi_(std::move(phi_coeffs)),
      domain_(x_domain) {
  if (static_cast<int>(theta_.size()) != theta_family_.coefficient_count()) {
    throw std::invalid_argument(
        "ProfileModel: theta coefficient count does not match family");
  }
  if (static_cast<int>(phi_.size()) != phi_family_.coefficient_count()) {
    throw std::invalid_argument(
        "ProfileModel: phi coefficient count does not match family");
  }
  if (domain_.hi < domain_.lo) {
    throw std::invalid_argument("ProfileModel: inverted x_domain");
  }
}

ProfileModel ProfileModel::constant(double theta0, double phi0,
                                    Interval x_domain) {
  return ProfileModel(FamilySpec::constant(), {theta0}, {phi0}, x_domain);
}

ProfileModel ProfileModel::affine_in_x(double theta0, double theta_slope,
                                       double phi0, double phi_slope,
                                       Interval x_domain) {
  // angle(x) = a0 + a1 x = (a0 + a1 mid) + (a1 half_span) u.
  const double mid = x_domain.midpoint();
  const double half = 0.5 * x_domain.span();
  return ProfileModel(FamilySpec::affine(),
                      {theta0 + theta_slope * mid, theta_slope * half},
                      {phi0 + phi_slope * mid, phi_slope * half}, x_domain);
}

double ProfileModel::eval_poly(const std::vector<double>& coeffs,
                               double x) const {
  const double half = 0.5 * domain_.span();
  const double u = (half > 0.0) ? (x - domain_.midpoint()) / half : 0.0;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * u + *it;
  }
  return acc;
}

double ProfileModel::theta_raw(double x) const { return eval_poly(theta_, x); }

double ProfileModel::phi_raw(double x) const { return eval_poly(phi_, x); }

PureHypothesis ProfileModel::evaluate(double x) const {
  if (!domain_.contains(x)) {
    throw std::domain_error("ProfileModel::evaluate: x outside x_domain");
  }
  return canonicalize_angles(theta_raw(x), phi_raw(x));
}

DensityOperator ProfileModel::state_at(double x) const {
  return density_from_hypothesis(evaluate(x));
}

int ProfileModel::parameter_count() const {
  return static_cast<int>(theta_.size() + phi_.size());
}

std::vector<double> ProfileModel::pack() const {
  std::vector<double> flat;
  flat.reserve(theta_.size() + phi_.size());
  flat.insert(flat.end(), theta_.begin(), theta_.end());
  flat.insert(flat.end(), phi_.begin(), phi_.end());
  return flat;
}

ProfileModel ProfileModel::with_parameters(
    std::span<const double> params) const {
  if (static_cast<int>(params.size()) != parameter_count()) {
    throw std::invalid_argument(
        "ProfileModel::with_parameters: wrong parameter count");
  }
  ProfileModel out = *this;
  std::copy(params.begin(), params.begin() + theta_.size(),
            out.theta_.begin());
  std::copy(params.begin() + theta_.size(), params.end(), out.phi_.begin());
  return out;
}

std::string profile_model_to_json(const ProfileModel& model) {
  ordered_json j;
  j["family"] = std::string(family_name(model.theta_family().family));
  j["degree"] = model.theta_family().degree;
  if (model.phi_family() != model.theta_family()) {
    j["phi_family"] = std::string(family_name(model.phi_family().family));
    j["phi_degree"] = model.phi_family().degree;
  }
  j["theta_params"] = model.theta_coefficients();
  j["phi_params"] = model.phi_coefficients();
  j["x_domain"] = {model.x_domain().lo, model.x_domain().hi};
  return j.dump(2);
}

ProfileModel profile_model_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("model JSON parse error: ") +
                                e.what());
  }
  for (const char* key : {"family", "degree", "theta_params", "phi_params",
                          "x_domain"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("model JSON missing key: ") +
                                  key);
    }
  }
  const FamilySpec theta_spec =
      spec_from(family_from_name(j["family"].get<std::string>()),
                j["degree"].get<int>());
  FamilySpec phi_spec = theta_spec;
  if (j.contains("phi_family") || j.contains("phi_degree")) {
    if (!j.contains("phi_family") || !j.contains("phi_degree")) {
      throw std::invalid_argument(
          "model JSON: phi_family and phi_degree must appear together");
    }
    phi_spec = spec_from(family_from_name(j["phi_family"].get<std::string>()),
                         j["phi_degree"].get<int>());
  }
  const auto domain = j["x_domain"].get<std::vector<double>>();
  if (domain.size() != 2) {
    throw std::invalid_argument("model JSON: x_domain must have two entries");
  }
  return ProfileModel(theta_spec, j["theta_params"].get<std::vector<double>>(),
                      phi_spec, j["phi_params"].get<std::vector<double>>(),
                      Interval{domain[0], domain[1]});
}

}  // namespace shadowfit
