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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "hdbsm/bell_basis.hpp"
#include "support/oracle.hpp"

namespace hdbsm {
namespace {

StateVector random_state(const BasisShape& shape, std::mt19937_64& rng) {
  return StateVector(shape, testing::random_unit_vector(shape.dimension(), rng));
}

UnitaryMatrix random_unitary(int d, std::mt19937_64& rng) {
  // Gram-Schmidt on random columns.
  std::vector<std::vector<Complex>> cols;
  while (static_cast<int>(cols.size()) < d) {
    auto v = testing::random_unit_vector(static_cast<std::size_t>(d), rng);
    for (const auto& c : cols) {
      Complex dot = 0.0;
      for (int n = 0; n < d; ++n) dot += std::conj(c[n]) * v[n];
      for (int n = 0; n < d; ++n) v[n] -= dot * c[n];
    }
    double norm = 0.0;
    for (const auto& z : v) norm += std::norm(z);
    for (auto& z : v) z /= std::sqrt(norm);
    cols.push_back(v);
  }
  std::vector<Complex> e(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) e[static_cast<std::size_t>(r) * d + c] = cols[c][r];
  return UnitaryMatrix(d, std::move(e));
}

TEST(BasisShape, MostSignificantFirst) {
  BasisShape shape({3, 4});
  EXPECT_EQ(shape.dimension(), 12u);
  const std::array<int, 2> label{2, 1};
  EXPECT_EQ(shape.offset(label), 2u * 4u + 1u);
  EXPECT_EQ(shape.digits(9), (std::vector<int>{2, 1}));
}

TEST(BasisShape, RejectsSmallRadixAndBadDigits) {
  EXPECT_THROW(BasisShape({3, 1}), DimensionError);
  EXPECT_THROW(BasisShape(std::vector<int>{}), DimensionError);
  BasisShape shape({2, 2});
  const std::array<int, 2> bad{0, 2};
  EXPECT_THROW(shape.offset(bad), DimensionError);
}

TEST(StateVector, RejectsNonFinite) {
  EXPECT_THROW(StateVector(BasisShape({2}), {std::numeric_limits<double>::quiet_NaN(), 0.0}),
               NonFiniteValue);
  EXPECT_THROW(StateVector(BasisShape({2}), {1.0}), ShapeMismatch);
}

TEST(TensorProduct, BasisKets) {
  const auto zero = StateVector::basis(BasisShape({2}), {0});
  const auto one = StateVector::basis(BasisShape({2}), {1});
  const auto joint = tensor_product(zero, one);
  EXPECT_EQ(joint.shape(), BasisShape({2, 2}));
  EXPECT_EQ(joint.at({0, 1}), Complex(1.0));
  EXPECT_NEAR(joint.norm_squared(), 1.0, kAlgebraicTolerance);
}

TEST(TensorProduct, NormIsMultiplicative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_state(BasisShape({3, 2}), rng);
    const auto v = random_state(BasisShape({4}), rng);
    EXPECT_NEAR(tensor_product(u, v).norm(), 1.0, kAlgebraicTolerance);
  }
}

TEST(TensorProduct, BellTimesAuxHasNineEqualAmplitudes) {
  const auto joint = tensor_product(bell_state(BellIndex(3, 0, 0)), aux_state(3));
  EXPECT_EQ(joint.dimension(), 81u);
  int nonzero = 0;
  for (const Complex& a : joint.amplitudes()) {
    if (std::abs(a) > kLogicalTolerance) {
      ++nonzero;
      EXPECT_NEAR(a.real(), 1.0 / 3.0, kAlgebraicTolerance);
      EXPECT_NEAR(a.imag(), 0.0, kAlgebraicTolerance);
    }
  }
  EXPECT_EQ(nonzero, 9);
}

TEST(TensorProduct, AssociativeOnRandomStates) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    const auto u = random_state(BasisShape({2}), rng);
    const auto v = random_state(BasisShape({3, 2}), rng);
    const auto w = random_state(BasisShape({4}), rng);
    const auto left = tensor_product(tensor_product(u, v), w);
    const auto right = tensor_product(u, tensor_product(v, w));
    ASSERT_EQ(left.shape(), right.shape());
    EXPECT_LE(max_amplitude_distance(left, right), kAlgebraicTolerance);
  }
}

TEST(InnerProduct, OrthogonalKets) {
  const auto zero = StateVector::basis(BasisShape({2}), {0});
  const auto one = StateVector::basis(BasisShape({2}), {1});
  EXPECT_EQ(inner_product(zero, one), Complex(0.0));
}

TEST(InnerProduct, ConjugateLinearInFirstArgument) {
  std::mt19937_64 rng(13);
  const auto u = random_state(BasisShape({3, 3}), rng);
  const auto v = random_state(BasisShape({3, 3}), rng);
  const Complex z(0.3, -1.7);
  EXPECT_LE(std::abs(inner_product(u * z, v) - std::conj(z) * inner_product(u, v)),
            kAlgebraicTolerance);
  EXPECT_NEAR(inner_product(u, u).real(), u.norm_squared(), kAlgebraicTolerance);
  EXPECT_NEAR(inner_product(u, u).real(), 1.0, kAlgebraicTolerance);
}

TEST(InnerProduct, DecompositionStatesOrthogonal) {
  const auto a00 = decomp_state(DecompIndex(3, 0, 0));
  const auto a10 = decomp_state(DecompIndex(3, 1, 0));
  EXPECT_LE(std::abs(inner_product(a00, a10)), kAlgebraicTolerance);
}

TEST(InnerProduct, ShapeMismatchThrows) {
  const auto u = StateVector::basis(BasisShape({2, 3}), {0, 0});
  const auto v = StateVector::basis(BasisShape({3, 2}), {0, 0});
  EXPECT_THROW(inner_product(u, v), ShapeMismatch);
}

TEST(FourierMatrix, DisplayedIdentitiesAtDThree) {
  const auto f = fourier_matrix(3, -1);
  const double s = 1.0 / std::sqrt(3.0);
  const std::vector<Complex> flat{s, s, s};
  const std::vector<Complex> ramp{s, s * root_of_unity(1, 3), s * root_of_unity(2, 3)};
  const auto out0 = f.apply(flat);
  const auto out1 = f.apply(ramp);
  EXPECT_NEAR(std::abs(out0[0] - 1.0), 0.0, kAlgebraicTolerance);
  EXPECT_NEAR(std::abs(out0[1]), 0.0, kAlgebraicTolerance);
  EXPECT_NEAR(std::abs(out0[2]), 0.0, kAlgebraicTolerance);
  EXPECT_NEAR(std::abs(out1[0]), 0.0, kAlgebraicTolerance);
  EXPECT_NEAR(std::abs(out1[1] - 1.0), 0.0, kAlgebraicTolerance);
  EXPECT_NEAR(std::abs(out1[2]), 0.0, kAlgebraicTolerance);
}

TEST(FourierMatrix, TwoPointIsHadamard) {
  const auto f = fourier_matrix(2, -1);
  const double s = 1.0 / std::sqrt(2.0);
  const UnitaryMatrix h(2, {s, s, s, -s});
  EXPECT_LE(max_entry_distance(f, h), kAlgebraicTolerance);
}

TEST(FourierMatrix, AdjointFlipsSignAndIsUnitary) {
  for (int d = 2; d <= kMaxDimension; ++d) {
    for (int sign : {1, -1}) {
      const auto f = fourier_matrix(d, sign);
      EXPECT_LE(f.unitarity_defect(), kAlgebraicTolerance);
      EXPECT_LE(max_entry_distance(f.adjoint(), fourier_matrix(d, -sign)), kAlgebraicTolerance);
    }
  }
}

TEST(FourierMatrix, RejectsBadArguments) {
  EXPECT_THROW(fourier_matrix(1, 1), DimensionError);
  EXPECT_THROW(fourier_matrix(3, 0), DimensionError);
}

TEST(UnitaryMatrix, RejectsNonUnitary) {
  EXPECT_THROW(UnitaryMatrix(2, {1.0, 1.0, 0.0, 1.0}), NotUnitary);
}

TEST(ApplyLocalUnitary, IdentityAndInverse) {
  std::mt19937_64 rng(14);
  const auto state = random_state(BasisShape({3, 3, 3}), rng);
  EXPECT_LE(max_amplitude_distance(apply_local_unitary(state, UnitaryMatrix::identity(3), 1), state),
            kAlgebraicTolerance);
  const auto u = random_unitary(3, rng);
  const auto there = apply_local_unitary(state, u, 2);
  const auto back = apply_local_unitary(there, u.adjoint(), 2);
  EXPECT_LE(max_amplitude_distance(back, state), kAlgebraicTolerance);
}

TEST(ApplyLocalUnitary, FourierSpreadsFirstFactor) {
  for (int x = 0; x < 3; ++x) {
    const auto ket = StateVector::basis(BasisShape({3, 3}), {0, x});
    const auto out = apply_local_unitary(ket, fourier_matrix(3, -1), 0);
    for (int n = 0; n < 3; ++n) {
      for (int y = 0; y < 3; ++y) {
        const double expected = y == x ? 1.0 / std::sqrt(3.0) : 0.0;
        EXPECT_NEAR(std::abs(out.at({n, y})), expected, kAlgebraicTolerance);
      }
    }
  }
}

TEST(ApplyLocalUnitary, Errors) {
  const auto state = StateVector::basis(BasisShape({2, 3}), {0, 0});
  EXPECT_THROW(apply_local_unitary(state, fourier_matrix(3, 1), 2), DimensionError);
  EXPECT_THROW(apply_local_unitary(state, fourier_matrix(3, 1), 0), ShapeMismatch);
}

// Norm preservation over >= 100 random states per dimension.
TEST(ApplyLocalUnitary, PreservesNormOnRandomStates) {
  std::mt19937_64 rng(15);
  for (int d : {2, 3, 4, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto state = random_state(BasisShape({d, d, d}), rng);
      const auto u = random_unitary(d, rng);
      const std::size_t factor = static_cast<std::size_t>(trial % 3);
      const double before = state.norm();
      const double after = apply_local_unitary(state, u, factor).norm();
      ASSERT_LT(std::abs(after - before), kAlgebraicTolerance) << "d=" << d;
    }
  }
}

TEST(PermuteFactors, MovesDigits) {
  const auto ket = StateVector::basis(BasisShape({2, 3, 4}), {1, 2, 3});
  const std::array<std::size_t, 3> order{2, 0, 1};
  const auto out = permute_factors(ket, order);
  EXPECT_EQ(out.shape(), BasisShape({4, 2, 3}));
  EXPECT_EQ(out.at({3, 1, 2}), Complex(1.0));
  const std::array<std::size_t, 3> bad{0, 0, 1};
  EXPECT_THROW(permute_factors(ket, bad), DimensionError);
}

TEST(StateVector, CanonicalPhaseMakesFirstAmplitudeRealPositive) {
  const StateVector v(BasisShape({2}), {Complex(0.0, 0.0), Complex(0.0, -1.0)});
  const auto c = v.canonical_phase();
  EXPECT_NEAR(c[1].real(), 1.0, kAlgebraicTolerance);
  EXPECT_NEAR(c[1].imag(), 0.0, kAlgebraicTolerance);
}

}  // namespace
}  // namespace hdbsm
