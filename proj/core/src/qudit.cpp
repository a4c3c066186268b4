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

#include "hdbsm/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hdbsm {

namespace {

void require_finite(std::span<const Complex> values, const char* what) {
  for (const Complex& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NonFiniteValue(std::string(what) + " contains a non-finite entry");
    }
  }
}

}  // namespace

Complex root_of_unity(long long numerator, int denominator) {
  // Reduce first so the angle stays in [0, 2*pi) and exact residues give
  // exact angles.
  const int r = mod(numerator, denominator);
  const double angle = 2.0 * std::numbers::pi * r / denominator;
  return std::polar(1.0, angle);
}

// ---------------------------------------------------------------------------
// BasisShape

BasisShape::BasisShape(std::vector<int> radices) : radices_(std::move(radices)) {
  if (radices_.empty()) {
    throw DimensionError("basis shape needs at least one tensor factor");
  }
  for (int r : radices_) {
    if (r < 2) {
      throw DimensionError("radix " + std::to_string(r) + " is below 2");
    }
    dimension_ *= static_cast<std::size_t>(r);
  }
}

int BasisShape::radix(std::size_t factor) const {
  if (factor >= radices_.size()) {
    throw DimensionError("factor " + std::to_string(factor) + " out of range");
  }
  return radices_[factor];
}

std::size_t BasisShape::offset(std::span<const int> digits) const {
  if (digits.size() != radices_.size()) {
    throw DimensionError("label has " + std::to_string(digits.size()) +
                         " digits, shape has " +
                         std::to_string(radices_.size()) + " factors");
  }
  std::size_t off = 0;
  for (std::size_t f = 0; f < radices_.size(); ++f) {
    if (digits[f] < 0 || digits[f] >= radices_[f]) {
      throw DimensionError("digit " + std::to_string(digits[f]) +
                           " out of range for factor " + std::to_string(f));
    }
    off = off * static_cast<std::size_t>(radices_[f]) +
          static_cast<std::size_t>(digits[f]);
  }
  return off;
}

std::vector<int> BasisShape::digits(std::size_t offset) const {
  if (offset >= dimension_) {
    throw DimensionError("offset " + std::to_string(offset) + " out of range");
  }
  std::vector<int> out(radices_.size());
  for (std::size_t f = radices_.size(); f-- > 0;) {
    const auto r = static_cast<std::size_t>(radices_[f]);
    out[f] = static_cast<int>(offset % r);
    offset /= r;
  }
  return out;
}

BasisShape BasisShape::concat(const BasisShape& other) const {
  std::vector<int> joined = radices_;
  joined.insert(joined.end(), other.radices_.begin(), other.radices_.end());
  return BasisShape(std::move(joined));
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(BasisShape shape, std::vector<Complex> amplitudes)
    : shape_(std::move(shape)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != shape_.dimension()) {
    throw ShapeMismatch("got " + std::to_string(amplitudes_.size()) +
                        " amplitudes for a space of dimension " +
                        std::to_string(shape_.dimension()));
  }
  require_finite(amplitudes_, "state vector");
}

StateVector StateVector::zero(BasisShape shape) {
  std::vector<Complex> amps(shape.dimension());
  return StateVector(std::move(shape), std::move(amps));
}

StateVector StateVector::basis(BasisShape shape, std::span<const int> digits) {
  std::vector<Complex> amps(shape.dimension());
  amps[shape.offset(digits)] = 1.0;
  return StateVector(std::move(shape), std::move(amps));
}

StateVector StateVector::basis(BasisShape shape,
                               std::initializer_list<int> digits) {
  return basis(std::move(shape), std::span<const int>(digits.begin(), digits.size()));
}

Complex StateVector::at(std::span<const int> digits) const {
  return amplitudes_[shape_.offset(digits)];
}

Complex StateVector::at(std::initializer_list<int> digits) const {
  return at(std::span<const int>(digits.begin(), digits.size()));
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return sum;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n <= kLogicalTolerance) {
    throw DimensionError("cannot normalize a zero vector");
  }
  return *this * Complex(1.0 / n, 0.0);
}

StateVector StateVector::canonical_phase() const {
  for (const Complex& a : amplitudes_) {
    if (std::abs(a) > kLogicalTolerance) {
      return *this * (std::abs(a) / a);
    }
  }
  return *this;
}

StateVector StateVector::reshaped(BasisShape shape) const {
  return StateVector(std::move(shape), amplitudes_);
}

StateVector StateVector::operator+(const StateVector& other) const {
  if (!(shape_ == other.shape_)) {
    throw ShapeMismatch("cannot add states of different shapes");
  }
  std::vector<Complex> out(amplitudes_.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = amplitudes_[n] + other.amplitudes_[n];
  }
  return StateVector(shape_, std::move(out));
}

StateVector StateVector::operator*(Complex scale) const {
  std::vector<Complex> out(amplitudes_);
  for (Complex& a : out) a *= scale;
  return StateVector(shape_, std::move(out));
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(int dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ < 1) throw DimensionError("matrix dimension must be positive");
  if (entries_.size() != static_cast<std::size_t>(dim_) * dim_) {
    throw ShapeMismatch("matrix needs " + std::to_string(dim_ * dim_) +
                        " entries, got " + std::to_string(entries_.size()));
  }
  require_finite(entries_, "matrix");
  const double defect = unitarity_defect();
  if (defect > kLogicalTolerance) {
    throw NotUnitary("U^dagger U deviates from identity by " +
                     std::to_string(defect));
  }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  if (dim < 1) throw DimensionError("matrix dimension must be positive");
  std::vector<Complex> e(static_cast<std::size_t>(dim) * dim);
  for (int n = 0; n < dim; ++n) e[static_cast<std::size_t>(n) * dim + n] = 1.0;
  return UnitaryMatrix(Unchecked{}, dim, std::move(e));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  std::vector<Complex> e(entries_.size());
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      e[static_cast<std::size_t>(c) * dim_ + r] = std::conj((*this)(r, c));
    }
  }
  return UnitaryMatrix(Unchecked{}, dim_, std::move(e));
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw ShapeMismatch("matrix dimensions differ");
  std::vector<Complex> e(entries_.size());
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      Complex sum = 0.0;
      for (int k = 0; k < dim_; ++k) sum += (*this)(r, k) * rhs(k, c);
      e[static_cast<std::size_t>(r) * dim_ + c] = sum;
    }
  }
  return UnitaryMatrix(Unchecked{}, dim_, std::move(e));
}

std::vector<Complex> UnitaryMatrix::apply(std::span<const Complex> column) const {
  if (column.size() != static_cast<std::size_t>(dim_)) {
    throw ShapeMismatch("vector length " + std::to_string(column.size()) +
                        " does not match matrix dimension " +
                        std::to_string(dim_));
  }
  std::vector<Complex> out(column.size());
  for (int r = 0; r < dim_; ++r) {
    Complex sum = 0.0;
    for (int c = 0; c < dim_; ++c) sum += (*this)(r, c) * column[c];
    out[r] = sum;
  }
  return out;
}

double UnitaryMatrix::unitarity_defect() const {
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      Complex sum = 0.0;
      for (int k = 0; k < dim_; ++k) {
        sum += std::conj((*this)(k, r)) * (*this)(k, c);
      }
      const Complex expected = r == c ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(sum - expected));
    }
  }
  return worst;
}

double max_entry_distance(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw ShapeMismatch("matrix dimensions differ");
  double worst = 0.0;
  for (std::size_t n = 0; n < a.entries().size(); ++n) {
    worst = std::max(worst, std::abs(a.entries()[n] - b.entries()[n]));
  }
  return worst;
}

double max_amplitude_distance(const StateVector& a, const StateVector& b) {
  if (!(a.shape() == b.shape())) throw ShapeMismatch("state shapes differ");
  double worst = 0.0;
  for (std::size_t n = 0; n < a.dimension(); ++n) {
    worst = std::max(worst, std::abs(a[n] - b[n]));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Free operations

StateVector tensor_product(const StateVector& u, const StateVector& v) {
  std::vector<Complex> out(u.dimension() * v.dimension());
  const std::size_t stride = v.dimension();
  for (std::size_t a = 0; a < u.dimension(); ++a) {
    const Complex ua = u[a];
    if (ua == 0.0) continue;
    for (std::size_t b = 0; b < stride; ++b) out[a * stride + b] = ua * v[b];
  }
  return StateVector(u.shape().concat(v.shape()), std::move(out));
}

Complex inner_product(const StateVector& u, const StateVector& v) {
  if (!(u.shape() == v.shape())) {
    throw ShapeMismatch("inner product of states with different shapes");
  }
  Complex sum = 0.0;
  for (std::size_t n = 0; n < u.dimension(); ++n) sum += std::conj(u[n]) * v[n];
  return sum;
}

double fidelity(const StateVector& u, const StateVector& v) {
  return std::abs(inner_product(u, v));
}

UnitaryMatrix fourier_matrix(int d, int sign) {
  if (d < 2) throw DimensionError("Fourier matrix needs d >= 2");
  if (sign != 1 && sign != -1) throw DimensionError("sign must be +1 or -1");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Complex> e(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      e[static_cast<std::size_t>(r) * d + c] =
          root_of_unity(static_cast<long long>(sign) * r * c, d) * scale;
    }
  }
  return UnitaryMatrix(d, std::move(e));
}

StateVector apply_local_unitary(const StateVector& state,
                                const UnitaryMatrix& unitary,
                                std::size_t factor) {
  const BasisShape& shape = state.shape();
  if (factor >= shape.rank()) {
    throw DimensionError("factor " + std::to_string(factor) +
                         " out of range for a " + std::to_string(shape.rank()) +
                         "-factor state");
  }
  const int radix = shape.radix(factor);
  if (unitary.dim() != radix) {
    throw ShapeMismatch("unitary of dimension " + std::to_string(unitary.dim()) +
                        " applied to factor of radix " + std::to_string(radix));
  }
  // Split offsets as (outer, digit, inner) around the chosen factor.
  std::size_t inner = 1;
  for (std::size_t f = factor + 1; f < shape.rank(); ++f) {
    inner *= static_cast<std::size_t>(shape.radix(f));
  }
  const std::size_t outer = shape.dimension() / (inner * radix);
  const auto amps = state.amplitudes();
  std::vector<Complex> out(state.dimension());
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < inner; ++in) {
      for (int r = 0; r < radix; ++r) {
        Complex sum = 0.0;
        for (int c = 0; c < radix; ++c) {
          sum += unitary(r, c) * amps[(o * radix + c) * inner + in];
        }
        out[(o * radix + r) * inner + in] = sum;
      }
    }
  }
  return StateVector(shape, std::move(out));
}

StateVector permute_factors(const StateVector& state,
                            std::span<const std::size_t> order) {
  const BasisShape& shape = state.shape();
  if (order.size() != shape.rank()) {
    throw DimensionError("permutation length does not match factor count");
  }
  std::vector<bool> seen(order.size(), false);
  std::vector<int> radices(order.size());
  for (std::size_t f = 0; f < order.size(); ++f) {
    if (order[f] >= order.size() || seen[order[f]]) {
      throw DimensionError("factor order is not a permutation");
    }
    seen[order[f]] = true;
    radices[f] = shape.radix(order[f]);
  }
  BasisShape out_shape(std::move(radices));
  std::vector<Complex> out(state.dimension());
  std::vector<int> permuted(order.size());
  for (std::size_t n = 0; n < state.dimension(); ++n) {
    const std::vector<int> digits = shape.digits(n);
    for (std::size_t f = 0; f < order.size(); ++f) permuted[f] = digits[order[f]];
    out[out_shape.offset(permuted)] = state[n];
  }
  return StateVector(std::move(out_shape), std::move(out));
}

}  // namespace hdbsm
