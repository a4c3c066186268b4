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

// State families of the auxiliary-entanglement Bell measurement.
//
//   bell_state    psi_ij = d^-1/2 sum_n w^(s_b i n) |n, n+j>       [B sys, A sys]
//   aux_state     phi    = d^-1/2 sum_p |p, p>                      [B aux, A aux]
//   decomp_state  a_km   = d^-1/2 sum_q w^(s_d k q) |q, q-m>        [sys, aux]
//
// with w = exp(2 pi i / d), s_b = PhaseConvention::bell_sign and
// s_d = PhaseConvention::decomp_sign. Every returned state has its first
// nonzero amplitude real and positive.

#pragma once

#include <compare>
#include <string>
#include <vector>

#include "hdbsm/qudit.hpp"

namespace hdbsm {

/// Throws DimensionError unless 2 <= d <= kMaxDimension.
void require_supported_dimension(int d);

/// Subscript (i, j) of a system Bell state psi_ij.
struct BellIndex {
  int d = 2;
  int i = 0;
  int j = 0;

  BellIndex() = default;
  BellIndex(int d, int i, int j);

  friend auto operator<=>(const BellIndex&, const BellIndex&) = default;
};

/// Subscript (k, m) of a single-particle decomposition state a_km.
struct DecompIndex {
  int d = 2;
  int k = 0;
  int m = 0;

  DecompIndex() = default;
  DecompIndex(int d, int k, int m);

  friend auto operator<=>(const DecompIndex&, const DecompIndex&) = default;
};

/// All d^2 Bell indices in lexicographic (i, j) order.
std::vector<BellIndex> all_bell_indices(int d);
/// All d^2 decomposition indices in lexicographic (k, m) order.
std::vector<DecompIndex> all_decomp_indices(int d);

/// Signs of the phase exponents of the Bell and decomposition families.
struct PhaseConvention {
  int bell_sign = 1;
  int decomp_sign = 1;

  PhaseConvention() = default;
  PhaseConvention(int bell_sign, int decomp_sign);

  /// (+, +): the signs as printed for both families.
  static PhaseConvention literal() { return {}; }
  /// The four sign combinations in search order (+,+), (-,+), (+,-), (-,-).
  static std::vector<PhaseConvention> all();
  /// Parses "+,+", "-,+", "literal" and similar; throws DimensionError.
  static PhaseConvention parse(const std::string& text);

  std::string to_string() const;

  friend bool operator==(const PhaseConvention&, const PhaseConvention&) = default;
};

/// Bijection from auxiliary labels a, b, c, ... to digits.
class AuxLabelMap {
 public:
  /// a -> 0, b -> 1, c -> 2, ...
  static AuxLabelMap alphabetical(int d);
  /// digit_of_label[n] is the digit of the n-th letter; must be a permutation.
  AuxLabelMap(int d, std::vector<int> digit_of_label);

  int d() const { return d_; }
  int digit(int label) const;
  int digit(char label) const;
  char label(int digit) const;

  friend bool operator==(const AuxLabelMap&, const AuxLabelMap&) = default;

 private:
  int d_;
  std::vector<int> digit_of_label_;
  std::vector<int> label_of_digit_;
};

StateVector bell_state(const BellIndex& idx,
                       const PhaseConvention& conv = PhaseConvention::literal());

StateVector aux_state(int d);
StateVector aux_state(const AuxLabelMap& labels);

/// Auxiliary label arithmetic is mod d ("a - 1" = the letter before a,
/// cyclically); the label is then mapped to a digit through `labels`.
StateVector decomp_state(const DecompIndex& idx,
                         const PhaseConvention& conv = PhaseConvention::literal());
StateVector decomp_state(const DecompIndex& idx, const PhaseConvention& conv,
                         const AuxLabelMap& labels);

/// Shift X|n> = |n+1 mod d>.
UnitaryMatrix shift_matrix(int d);
/// Clock Z|n> = w^n |n>.
UnitaryMatrix clock_matrix(int d);

/// Clock/shift monomial selected by calibration.
struct ShiftClockWord {
  int shift_power = 0;
  int clock_power = 0;
  bool clock_first = true;  // X^a Z^b when true, Z^b X^a otherwise

  std::string to_string() const;
};

struct CalibratedShiftClock {
  ShiftClockWord word;
  UnitaryMatrix unitary;
  double fidelity;
};

/// Finds the monomial W with (I (x) W) psi_00 = psi_ij up to global phase,
/// W acting on particle A's system digit (factor 1 of bell_state).
/// Throws CalibrationFailure if no monomial reaches fidelity 1.
CalibratedShiftClock calibrate_shift_clock(const BellIndex& idx,
                                           const PhaseConvention& conv);

UnitaryMatrix generalized_shift_clock(const BellIndex& idx,
                                      const PhaseConvention& conv);

}  // namespace hdbsm
