// Copyright 2026 The hdbsm Authors
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

// Dense complex linear algebra over small multi-qudit Hilbert spaces.
//
// Index convention: a basis label is a tuple of digits (n_0, n_1, ..., n_{r-1}),
// one digit per tensor factor, and factor 0 is the most significant digit.
// The label |n, aux> therefore sits at offset n * radix(1) + aux, matching the
// left-to-right reading of kets.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hdbsm/errors.hpp"

namespace hdbsm {

using Complex = std::complex<double>;

/// Tolerance for zero/nonzero decisions and other logical assertions.
inline constexpr double kLogicalTolerance = 1e-9;
/// Tolerance for pure algebraic identities.
inline constexpr double kAlgebraicTolerance = 1e-12;

/// Largest supported qudit dimension.
inline constexpr int kMaxDimension = 6;

/// Returns exp(2*pi*i * numerator / denominator).
Complex root_of_unity(long long numerator, int denominator);

/// Non-negative residue of value mod modulus.
constexpr int mod(long long value, int modulus) {
  const long long r = value % modulus;
  return static_cast<int>(r < 0 ? r + modulus : r);
}

/// Radices of the tensor factors of a composite space.
class BasisShape {
 public:
  explicit BasisShape(std::vector<int> radices);

  std::span<const int> radices() const { return radices_; }
  int radix(std::size_t factor) const;
  std::size_t rank() const { return radices_.size(); }
  std::size_t dimension() const { return dimension_; }

  /// Offset of a digit tuple; throws DimensionError on out-of-range digits.
  std::size_t offset(std::span<const int> digits) const;
  std::vector<int> digits(std::size_t offset) const;

  BasisShape concat(const BasisShape& other) const;

  friend bool operator==(const BasisShape&, const BasisShape&) = default;

 private:
  std::vector<int> radices_;
  std::size_t dimension_ = 1;
};

/// Amplitude vector over a labeled composite basis. Amplitudes are finite.
class StateVector {
 public:
  StateVector(BasisShape shape, std::vector<Complex> amplitudes);

  /// All-zero vector of the given shape.
  static StateVector zero(BasisShape shape);
  /// Computational basis state |digits>.
  static StateVector basis(BasisShape shape, std::span<const int> digits);
  static StateVector basis(BasisShape shape, std::initializer_list<int> digits);

  const BasisShape& shape() const { return shape_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  Complex operator[](std::size_t offset) const { return amplitudes_[offset]; }
  Complex at(std::span<const int> digits) const;
  Complex at(std::initializer_list<int> digits) const;

  double norm_squared() const;
  double norm() const;

  /// Copy rescaled to unit norm; throws DimensionError on the zero vector.
  StateVector normalized() const;
  /// Copy multiplied by a global phase so the first nonzero amplitude
  /// (magnitude above kLogicalTolerance) is real and positive.
  StateVector canonical_phase() const;
  /// Same amplitudes reinterpreted over a shape of equal dimension.
  StateVector reshaped(BasisShape shape) const;

  StateVector operator+(const StateVector& other) const;
  StateVector operator*(Complex scale) const;

 private:
  BasisShape shape_;
  std::vector<Complex> amplitudes_;
};

/// Square matrix whose columns form an orthonormal set (U^dagger U = 1 within
/// kLogicalTolerance, checked on construction).
class UnitaryMatrix {
 public:
  /// Row-major entries; throws NotUnitary if the unitarity check fails.
  UnitaryMatrix(int dim, std::vector<Complex> entries);

  static UnitaryMatrix identity(int dim);

  int dim() const { return dim_; }
  Complex operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * dim_ + col];
  }
  std::span<const Complex> entries() const { return entries_; }

  UnitaryMatrix adjoint() const;
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;
  std::vector<Complex> apply(std::span<const Complex> column) const;

  /// Largest entrywise deviation of U^dagger U from the identity.
  double unitarity_defect() const;

 private:
  struct Unchecked {};
  UnitaryMatrix(Unchecked, int dim, std::vector<Complex> entries)
      : dim_(dim), entries_(std::move(entries)) {}

  int dim_;
  std::vector<Complex> entries_;
};

double max_entry_distance(const UnitaryMatrix& a, const UnitaryMatrix& b);
double max_amplitude_distance(const StateVector& a, const StateVector& b);

StateVector tensor_product(const StateVector& u, const StateVector& v);

/// <u|v>, conjugate-linear in u. Throws ShapeMismatch.
Complex inner_product(const StateVector& u, const StateVector& v);

/// |<u|v>|, the pure-state overlap, insensitive to global phase.
double fidelity(const StateVector& u, const StateVector& v);

/// Entry (r, c) = exp(sign * 2*pi*i * r * c / d) / sqrt(d).
UnitaryMatrix fourier_matrix(int d, int sign);

/// Applies U to one tensor factor, identity on the others.
StateVector apply_local_unitary(const StateVector& state,
                                const UnitaryMatrix& unitary,
                                std::size_t factor);

/// Reorders tensor factors: factor f of the result is factor order[f] of the
/// input.
StateVector permute_factors(const StateVector& state,
                            std::span<const std::size_t> order);

}  // namespace hdbsm
