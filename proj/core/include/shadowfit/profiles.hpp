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

#include <span>
#include <string>
#include <vector>

#include "shadowfit/qubit.hpp"

namespace shadowfit {

/// Parametric families for angle profiles over x.
enum class ProfileFamily { constant, affine, polynomial };

std::string_view family_name(ProfileFamily family);

/// A family together with its polynomial degree: constant -> 0, affine -> 1,
/// polynomial -> k. The coefficient count is degree + 1.
struct FamilySpec {
  ProfileFamily family = ProfileFamily::constant;
  int degree = 0;

  static FamilySpec constant() { return {ProfileFamily::constant, 0}; }
  static FamilySpec affine() { return {ProfileFamily::affine, 1}; }
  /// Throws std::invalid_argument for negative k.
  static FamilySpec polynomial(int k);

  int coefficient_count() const { return degree + 1; }

  bool operator==(const FamilySpec&) const = default;
};

/// Closed interval of x values (e.g. wavelengths in nm).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double span() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }

  /// Containment with a small relative slack so grid endpoints computed in
  /// floating point do not fall out of their own domain.
  bool contains(double x) const;

  bool operator==(const Interval&) const = default;
};

/// Map theta_raw outside [0, pi] back into range by the reflection
/// theta -> -theta (mod 2 pi), phi -> phi + pi, which leaves the physical
/// state unchanged. phi is never wrapped.
PureHypothesis canonicalize_angles(double theta_raw, double phi_raw);

/// A smooth hypothesis profile x -> (theta(x), phi(x)). Each angle carries
/// its own coefficient vector, interpreted as a polynomial in the rescaled
/// coordinate u in [-1, 1] (an affine image of x_domain), which keeps
/// higher-degree fits well conditioned. theta is reflected into [0, pi] at
/// evaluation time; phi is left unwrapped.
class ProfileModel {
 public:
  /// Constant (0, 0) model on a degenerate domain: a valid placeholder for
  /// containers and deferred initialization.
  ProfileModel() : ProfileModel(FamilySpec::constant(), {0.0}, {0.0}, {}) {}

  /// Shared family for both angles. Throws std::invalid_argument if a
  /// coefficient vector does not match the family's count or the domain is
  /// inverted (hi < lo).
  ProfileModel(FamilySpec family, std::vector<double> theta_coeffs,
               std::vector<double> phi_coeffs, Interval x_domain);

  /// Independent families per angle.
  ProfileModel(FamilySpec theta_family, std::vector<double> theta_coeffs,
               FamilySpec phi_family, std::vector<double> phi_coeffs,
               Interval x_domain);

  /// Constant model (theta0, phi0) on the given domain.
  static ProfileModel constant(double theta0, double phi0, Interval x_domain);

  /// Affine model specified in raw x coordinates: angle(x) = a0 + a1 * x.
  /// Stored internally in the rescaled-u basis.
  static ProfileModel affine_in_x(double theta0, double theta_slope,
                                  double phi0, double phi_slope,
                                  Interval x_domain);

  const FamilySpec& theta_family() const { return theta_family_; }
  const FamilySpec& phi_family() const { return phi_family_; }
  const std::vector<double>& theta_coefficients() const { return theta_; }
  const std::vector<double>& phi_coefficients() const { return phi_; }
  const Interval& x_domain() const { return domain_; }

  /// Raw polynomial values before canonicalization.
  double theta_raw(double x) const;
  double phi_raw(double x) const;

  /// Hypothesis at x, canonicalized to theta in [0, pi]. Throws
  /// std::domain_error if x lies outside x_domain.
  PureHypothesis evaluate(double x) const;

  /// Density operator of evaluate(x).
  DensityOperator state_at(double x) const;

  int parameter_count() const;

  /// Flatten to [theta coefficients..., phi coefficients...].
  std::vector<double> pack() const;

  /// Same shape (families, domain) with replaced coefficients. Throws
  /// std::invalid_argument if params.size() != parameter_count().
  ProfileModel with_parameters(std::span<const double> params) const;

  bool operator==(const ProfileModel&) const = default;

 private:
  double eval_poly(const std::vector<double>& coeffs, double x) const;

  FamilySpec theta_family_;
  FamilySpec phi_family_;
  std::vector<double> theta_;
  std::vector<double> phi_;
  Interval domain_;
};

/// Ground-truth profiles share the hypothesis representation.
using TrueProfile = ProfileModel;

/// JSON round trip for models. The schema is
/// {"family", "degree", "theta_params", "phi_params", "x_domain"}, with
/// "phi_family"/"phi_degree" added only when the two angles use different
/// families. Numbers survive the round trip to better than 1e-12.
std::string profile_model_to_json(const ProfileModel& model);
ProfileModel profile_model_from_json(const std::string& text);

}  // namespace shadowfit
