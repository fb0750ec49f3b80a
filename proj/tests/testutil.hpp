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

#include <cmath>
#include <random>

#include "shadowfit/qubit.hpp"
#include "shadowfit/shadows.hpp"

namespace shadowfit::testutil {

/// Uniform pure state on the Bloch sphere.
inline PureHypothesis random_pure(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double theta = std::acos(1.0 - 2.0 * unit(rng));
  const double phi = kTwoPi * unit(rng);
  return PureHypothesis{theta, phi};
}

/// Mixed state uniform in the Bloch ball.
inline DensityOperator random_mixed(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double radius = std::cbrt(unit(rng));
  const double z = 1.0 - 2.0 * unit(rng);
  const double azimuth = kTwoPi * unit(rng);
  const double r_xy = std::sqrt(std::max(0.0, 1.0 - z * z));
  return DensityOperator::from_bloch(
      1.0, radius * Vector3d(r_xy * std::cos(azimuth),
                             r_xy * std::sin(azimuth), z));
}

/// Random Hermitian operator with N(0,1) coefficient entries.
inline DensityOperator random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix2c m;
  m(0, 0) = gauss(rng);
  m(1, 1) = gauss(rng);
  m(0, 1) = std::complex<double>(gauss(rng), gauss(rng));
  m(1, 0) = std::conj(m(0, 1));
  return DensityOperator(m);
}

/// Largest absolute entry difference between two operators.
inline double max_entry_diff(const DensityOperator& a,
                             const DensityOperator& b) {
  double d = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      d = std::max(d, std::abs(a.entry(r, c) - b.entry(r, c)));
    }
  }
  return d;
}

/// Independent enumeration of the measurement channel: weight 1/3 per basis,
/// Born probabilities from explicit kets.
inline DensityOperator channel_by_enumeration(const DensityOperator& rho) {
  Matrix2c acc = Matrix2c::Zero();
  for (Projector p : kAllProjectors) {
    const Vector2c ket = projector_ket(p);
    const std::complex<double> born = ket.dot(rho.matrix() * ket);
    acc += (born.real() / 3.0) * (ket * ket.adjoint());
  }
  return DensityOperator(acc);
}

}  // namespace shadowfit::testutil
