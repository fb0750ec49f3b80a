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

#include "shadowfit/qubit.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace shadowfit {
namespace {

using std::complex;

constexpr complex<double> kI{0.0, 1.0};

double inf_norm(const Matrix2c& m) {
  double n = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      n = std::max(n, std::abs(m(r, c)));
    }
  }
  return n;
}

}  // namespace

int basis_index(Projector p) { return static_cast<int>(p) / 2; }

Projector basis_partner(Projector p) {
  const int i = static_cast<int>(p);
  return static_cast<Projector>(i ^ 1);
}

Projector projector_at(int basis, int outcome) {
  if (basis < 0 || basis >= kNumBases || outcome < 0 || outcome > 1) {
    throw std::invalid_argument("projector_at: basis or outcome out of range");
  }
  return static_cast<Projector>(2 * basis + outcome);
}

std::string_view projector_label(Projector p) {
  static constexpr std::array<std::string_view, 6> labels = {"H", "V", "D",
                                                             "A", "R", "L"};
  return labels[static_cast<std::size_t>(p)];
}

std::optional<Projector> parse_projector(std::string_view text) {
  if (text.size() != 1) {
    return std::nullopt;
  }
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'H':
      return Projector::H;
    case 'V':
      return Projector::V;
    case 'D':
      return Projector::D;
    case 'A':
      return Projector::A;
    case 'R':
      return Projector::R;
    case 'L':
      return Projector::L;
    default:
      return std::nullopt;
  }
}

Vector2c projector_ket(Projector p) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (p) {
    case Projector::H:
      return Vector2c(1.0, 0.0);
    case Projector::V:
      return Vector2c(0.0, 1.0);
    case Projector::D:
      return Vector2c(r, r);
    case Projector::A:
      return Vector2c(r, -r);
    case Projector::R:
      return Vector2c(r, r * kI);
    case Projector::L:
      return Vector2c(r, -r * kI);
  }
  throw std::invalid_argument("projector_ket: invalid projector");
}

Vector3d projector_axis(Projector p) {
  switch (p) {
    case Projector::H:
      return Vector3d(0, 0, 1);
    case Projector::V:
      return Vector3d(0, 0, -1);
    case Projector::D:
      return Vector3d(1, 0, 0);
    case Projector::A:
      return Vector3d(-1, 0, 0);
    case Projector::R:
      return Vector3d(0, 1, 0);
    case Projector::L:
      return Vector3d(0, -1, 0);
  }
  throw std::invalid_argument("projector_axis: invalid projector");
}

Vector2c state_vector(const PureHypothesis& h) {
  const double c = std::cos(0.5 * h.theta);
  const double s = std::sin(0.5 * h.theta);
  return Vector2c(c, std::exp(kI * h.phi) * s);
}

Vector3d bloch_vector(const PureHypothesis& h) {
  const double st = std::sin(h.theta);
  return Vector3d(st * std::cos(h.phi), st * std::sin(h.phi),
                  std::cos(h.theta));
}

DensityOperator::DensityOperator() : m_(Matrix2c::Zero()) {}

DensityOperator::DensityOperator(const Matrix2c& m) {
  const double tol = 1e-12 * std::max(1.0, inf_norm(m));
  if (std::abs(m(0, 0).imag()) > tol || std::abs(m(1, 1).imag()) > tol ||
      std::abs(m(1, 0) - std::conj(m(0, 1))) > tol) {
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  }
  // Exact symmetrization: diagonal imaginary parts drop, off-diagonals
  // average to a conjugate pair, so subsequent arithmetic stays Hermitian
  // without tolerance games.
  m_(0, 0) = m(0, 0).real();
  m_(1, 1) = m(1, 1).real();
  m_(0, 1) = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  m_(1, 0) = std::conj(m_(0, 1));
}

DensityOperator DensityOperator::zero() { return DensityOperator(); }

DensityOperator DensityOperator::identity() {
  return DensityOperator(Matrix2c::Identity(), Unchecked{});
}

DensityOperator DensityOperator::from_bloch(double trace,
                                            const Vector3d& bloch) {
  Matrix2c m;
  m(0, 0) = 0.5 * (trace + bloch.z());
  m(1, 1) = 0.5 * (trace - bloch.z());
  m(0, 1) = 0.5 * complex<double>(bloch.x(), -bloch.y());
  m(1, 0) = std::conj(m(0, 1));
  return DensityOperator(m, Unchecked{});
}

DensityOperator DensityOperator::pure(const Vector2c& ket) {
  Matrix2c m;
  m(0, 0) = std::norm(ket(0));
  m(1, 1) = std::norm(ket(1));
  m(0, 1) = ket(0) * std::conj(ket(1));
  m(1, 0) = std::conj(m(0, 1));
  return DensityOperator(m, Unchecked{});
}

double DensityOperator::trace() const {
  return m_(0, 0).real() + m_(1, 1).real();
}

Vector3d DensityOperator::bloch() const {
  return Vector3d(2.0 * m_(0, 1).real(), -2.0 * m_(0, 1).imag(),
                  m_(0, 0).real() - m_(1, 1).real());
}

std::array<double, 2> DensityOperator::eigenvalues() const {
  const double a = m_(0, 0).real();
  const double b = m_(1, 1).real();
  const double mean = 0.5 * (a + b);
  const double disc = std::hypot(0.5 * (a - b), std::abs(m_(0, 1)));
  return {mean + disc, mean - disc};
}

bool DensityOperator::is_physical_state(double tol) const {
  if (std::abs(trace() - 1.0) > tol) {
    return false;
  }
  return eigenvalues()[1] >= -tol;
}

bool DensityOperator::is_zero(double tol) const { return inf_norm(m_) <= tol; }

DensityOperator DensityOperator::operator+(const DensityOperator& rhs) const {
  return DensityOperator(Matrix2c(m_ + rhs.m_), Unchecked{});
}

DensityOperator DensityOperator::operator-(const DensityOperator& rhs) const {
  return DensityOperator(Matrix2c(m_ - rhs.m_), Unchecked{});
}

DensityOperator DensityOperator::operator*(double scale) const {
  return DensityOperator(Matrix2c(scale * m_), Unchecked{});
}

double trace_product(const DensityOperator& a, const DensityOperator& b) {
  // tr(ab) = sum_{rc} a_rc b_cr; real by Hermiticity of both factors.
  const Matrix2c& ma = a.matrix();
  const Matrix2c& mb = b.matrix();
  complex<double> t = ma(0, 0) * mb(0, 0) + ma(0, 1) * mb(1, 0) +
                      ma(1, 0) * mb(0, 1) + ma(1, 1) * mb(1, 1);
  return t.real();
}

EigenSystem hermitian_eigensystem(const DensityOperator& op) {
  const Matrix2c& m = op.matrix();
  const double a = m(0, 0).real();
  const double b = m(1, 1).real();
  const complex<double> c = m(0, 1);
  const double mean = 0.5 * (a + b);
  const double disc = std::hypot(0.5 * (a - b), std::abs(c));

  EigenSystem sys;
  sys.values = {mean + disc, mean - disc};

  if (disc <= 1e-300) {
    // Scalar multiple of the identity; any orthonormal pair works.
    sys.vectors = {Vector2c(1.0, 0.0), Vector2c(0.0, 1.0)};
    return sys;
  }
  // For eigenvalue L the candidates (c, L - a) and (L - b, conj(c)) both
  // solve (m - L I)v = 0; pick the larger for numerical robustness, then
  // obtain the second eigenvector as the orthogonal complement.
  const double lam = sys.values[0];
  const Vector2c v1(c, complex<double>(lam - a, 0.0));
  const Vector2c v2(complex<double>(lam - b, 0.0), std::conj(c));
  Vector2c v = (v1.norm() >= v2.norm()) ? v1 : v2;
  v.normalize();
  sys.vectors[0] = v;
  sys.vectors[1] = Vector2c(-std::conj(v(1)), std::conj(v(0)));
  return sys;
}

DensityOperator projector_state(Projector p) {
  return DensityOperator::from_bloch(1.0, projector_axis(p));
}

DensityOperator density_from_hypothesis(const PureHypothesis& h) {
  if (!(h.theta >= 0.0 && h.theta <= kPi)) {
    throw std::domain_error("density_from_hypothesis: theta outside [0, pi]");
  }
  return DensityOperator::pure(state_vector(h));
}

double pure_fidelity(const PureHypothesis& h1, const PureHypothesis& h2) {
  const Vector2c a = state_vector(h1);
  const Vector2c b = state_vector(h2);
  return std::norm(a.dot(b));
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  const std::array<double, 2> lam = (a - b).eigenvalues();
  return 0.5 * (std::abs(lam[0]) + std::abs(lam[1]));
}

DensityOperator helstrom_projector(const DensityOperator& a,
                                   const DensityOperator& b) {
  const DensityOperator diff = a - b;
  const EigenSystem sys = hermitian_eigensystem(diff);
  const double scale = std::max(std::abs(sys.values[0]),
                                std::abs(sys.values[1]));
  const double tol = 1e-12 * std::max(1.0, scale);

  DensityOperator proj = DensityOperator::zero();
  for (int i = 0; i < 2; ++i) {
    if (sys.values[i] > tol) {
      proj = proj + DensityOperator::pure(sys.vectors[i]);
    }
  }
  // A zero result means the operators coincide (degenerate discrimination).
  return proj;
}

}  // namespace shadowfit
