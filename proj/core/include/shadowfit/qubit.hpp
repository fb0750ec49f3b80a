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

#include <array>
#include <complex>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace shadowfit {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using Vector3d = Eigen::Vector3d;

/// The six canonical single-qubit polarization analyzer settings. They form
/// three mutually unbiased bases: {H,V} (z axis), {D,A} (x axis), {R,L}
/// (y axis), with H = (1,0) and V = (0,1) in the computational basis.
enum class Projector : int { H = 0, V = 1, D = 2, A = 3, R = 4, L = 5 };

inline constexpr std::array<Projector, 6> kAllProjectors = {
    Projector::H, Projector::V, Projector::D,
    Projector::A, Projector::R, Projector::L};

inline constexpr int kNumProjectors = 6;
inline constexpr int kNumBases = 3;

/// Index of the measurement basis containing `p`: 0 = {H,V}, 1 = {D,A},
/// 2 = {R,L}.
int basis_index(Projector p);

/// The orthogonal partner within the same basis (H<->V, D<->A, R<->L).
Projector basis_partner(Projector p);

/// The projector with the given basis (0..2) and outcome (0 = first element
/// of the pair, 1 = its partner).
Projector projector_at(int basis, int outcome);

/// Canonical single-letter label ("H", "V", ...).
std::string_view projector_label(Projector p);

/// Case-insensitive parse of a projector label. Returns nullopt on failure.
std::optional<Projector> parse_projector(std::string_view text);

/// Normalized ket |p> in the computational basis, e.g. |D> = (1,1)/sqrt(2).
Vector2c projector_ket(Projector p);

/// Bloch axis of |p><p|: exact unit vectors +-x, +-y, +-z.
Vector3d projector_axis(Projector p);

/// A pure qubit hypothesis |eta> = cos(theta/2)|H> + e^{i phi} sin(theta/2)|V>.
/// theta is expected in [0, pi]; phi is kept unwrapped (any real value) so
/// smooth phase profiles can wind past 2 pi without artificial jumps. At
/// theta in {0, pi} the phase phi is unidentifiable: every value yields the
/// same state.
struct PureHypothesis {
  double theta = 0.0;
  double phi = 0.0;
};

/// State vector of a pure hypothesis in the computational basis.
Vector2c state_vector(const PureHypothesis& h);

/// Bloch vector (sin t cos p, sin t sin p, cos t) of a pure hypothesis.
Vector3d bloch_vector(const PureHypothesis& h);

/// A 2x2 Hermitian operator. Used for physical states rho(x), classical
/// snapshots (trace 1 but indefinite), and operator differences (traceless).
/// Construction validates Hermiticity to 1e-12 and then symmetrizes exactly,
/// so arithmetic on stored operators preserves Hermiticity bit-for-bit.
class DensityOperator {
 public:
  /// The zero operator.
  DensityOperator();

  /// Validating constructor: throws std::invalid_argument if `m` deviates
  /// from Hermiticity by more than 1e-12 (relative to its largest entry).
  explicit DensityOperator(const Matrix2c& m);

  static DensityOperator zero();
  static DensityOperator identity();

  /// Operator with tr O = trace and tr(O sigma_k) = bloch[k]:
  /// O = (trace * I + bloch . sigma) / 2.
  static DensityOperator from_bloch(double trace, const Vector3d& bloch);

  /// Outer product |ket><ket| (the ket is not re-normalized).
  static DensityOperator pure(const Vector2c& ket);

  const Matrix2c& matrix() const { return m_; }
  std::complex<double> entry(int row, int col) const { return m_(row, col); }

  double trace() const;

  /// Bloch components s_k = tr(O sigma_k) together with the trace define the
  /// operator uniquely.
  Vector3d bloch() const;

  /// Eigenvalues in descending order, by the closed 2x2 formula.
  std::array<double, 2> eigenvalues() const;

  /// Trace 1 within `tol` and eigenvalues >= -tol.
  bool is_physical_state(double tol = 1e-9) const;

  bool is_zero(double tol = 1e-12) const;

  DensityOperator operator+(const DensityOperator& rhs) const;
  DensityOperator operator-(const DensityOperator& rhs) const;
  DensityOperator operator*(double scale) const;

 private:
  struct Unchecked {};
  DensityOperator(const Matrix2c& m, Unchecked) : m_(m) {}

  Matrix2c m_;
};

inline DensityOperator operator*(double scale, const DensityOperator& op) {
  return op * scale;
}

/// Real part of tr(a b); exact trace inner product for Hermitian a, b.
double trace_product(const DensityOperator& a, const DensityOperator& b);

/// Eigen-decomposition of a 2x2 Hermitian operator, eigenvalues descending.
struct EigenSystem {
  std::array<double, 2> values;
  std::array<Vector2c, 2> vectors;
};
EigenSystem hermitian_eigensystem(const DensityOperator& op);

/// |p><p| as an exact-entry operator (trace 1, Bloch axis of p).
DensityOperator projector_state(Projector p);

/// Density operator of a pure hypothesis. Throws std::domain_error if
/// theta lies outside [0, pi].
DensityOperator density_from_hypothesis(const PureHypothesis& h);

/// Squared overlap |<eta1|eta2>|^2. Symmetric; 1 iff the states coincide.
double pure_fidelity(const PureHypothesis& h1, const PureHypothesis& h2);

/// Trace distance (1/2)||a - b||_1 via the closed 2x2 eigenvalue formula.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

/// Projector onto the nonnegative eigenspace of (a - b), the Helstrom
/// discriminator between the two operators. For trace-equal pairs it
/// satisfies tr[P (a - b)] = trace_distance(a, b). When a and b coincide the
/// difference vanishes and the zero operator is returned; a zero result is
/// the degeneracy signal (see DensityOperator::is_zero).
DensityOperator helstrom_projector(const DensityOperator& a,
                                   const DensityOperator& b);

}  // namespace shadowfit
