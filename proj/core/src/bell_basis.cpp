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

#include "hdbsm/bell_basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hdbsm {

namespace {

void require_digit(int value, int d, const char* name) {
  if (value < 0 || value >= d) {
    throw DimensionError(std::string(name) + "=" + std::to_string(value) +
                         " outside [0, " + std::to_string(d) + ")");
  }
}

void require_sign(int sign) {
  if (sign != 1 && sign != -1) {
    throw DimensionError("phase sign must be +1 or -1, got " +
                         std::to_string(sign));
  }
}

UnitaryMatrix power(const UnitaryMatrix& base, int exponent) {
  UnitaryMatrix out = UnitaryMatrix::identity(base.dim());
  for (int n = 0; n < exponent; ++n) out = out * base;
  return out;
}

}  // namespace

void require_supported_dimension(int d) {
  if (d < 2 || d > kMaxDimension) {
    throw DimensionError("dimension " + std::to_string(d) +
                         " outside supported range [2, " +
                         std::to_string(kMaxDimension) + "]");
  }
}

BellIndex::BellIndex(int d, int i, int j) : d(d), i(i), j(j) {
  require_supported_dimension(d);
  require_digit(i, d, "i");
  require_digit(j, d, "j");
}

DecompIndex::DecompIndex(int d, int k, int m) : d(d), k(k), m(m) {
  require_supported_dimension(d);
  require_digit(k, d, "k");
  require_digit(m, d, "m");
}

std::vector<BellIndex> all_bell_indices(int d) {
  std::vector<BellIndex> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.emplace_back(d, i, j);
  return out;
}

std::vector<DecompIndex> all_decomp_indices(int d) {
  std::vector<DecompIndex> out;
  for (int k = 0; k < d; ++k)
    for (int m = 0; m < d; ++m) out.emplace_back(d, k, m);
  return out;
}

// ---------------------------------------------------------------------------
// PhaseConvention

PhaseConvention::PhaseConvention(int bell_sign, int decomp_sign)
    : bell_sign(bell_sign), decomp_sign(decomp_sign) {
  require_sign(bell_sign);
  require_sign(decomp_sign);
}

std::vector<PhaseConvention> PhaseConvention::all() {
  return {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
}

PhaseConvention PhaseConvention::parse(const std::string& text) {
  if (text == "literal") return literal();
  std::string compact;
  for (char c : text) {
    if (c != ' ' && c != '(' && c != ')') compact += c;
  }
  auto sign_of = [&](char c) {
    if (c == '+') return 1;
    if (c == '-') return -1;
    throw DimensionError("cannot parse phase convention '" + text + "'");
  };
  if (compact.size() != 3 || compact[1] != ',') {
    throw DimensionError("cannot parse phase convention '" + text +
                         "' (expected e.g. \"+,+\" or \"-,+\")");
  }
  return {sign_of(compact[0]), sign_of(compact[2])};
}

std::string PhaseConvention::to_string() const {
  std::string out = "(";
  out += bell_sign > 0 ? '+' : '-';
  out += ',';
  out += decomp_sign > 0 ? '+' : '-';
  out += ')';
  return out;
}

// ---------------------------------------------------------------------------
// AuxLabelMap

AuxLabelMap AuxLabelMap::alphabetical(int d) {
  std::vector<int> digits(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) digits[n] = n;
  return AuxLabelMap(d, std::move(digits));
}

AuxLabelMap::AuxLabelMap(int d, std::vector<int> digit_of_label)
    : d_(d), digit_of_label_(std::move(digit_of_label)) {
  require_supported_dimension(d);
  if (digit_of_label_.size() != static_cast<std::size_t>(d)) {
    throw DimensionError("label map needs exactly d entries");
  }
  label_of_digit_.assign(static_cast<std::size_t>(d), -1);
  for (int label = 0; label < d; ++label) {
    const int digit = digit_of_label_[label];
    require_digit(digit, d, "digit");
    if (label_of_digit_[digit] != -1) {
      throw DimensionError("label map is not a bijection");
    }
    label_of_digit_[digit] = label;
  }
}

int AuxLabelMap::digit(int label) const {
  require_digit(label, d_, "label");
  return digit_of_label_[label];
}

int AuxLabelMap::digit(char label) const { return digit(label - 'a'); }

char AuxLabelMap::label(int digit) const {
  require_digit(digit, d_, "digit");
  return static_cast<char>('a' + label_of_digit_[digit]);
}

// ---------------------------------------------------------------------------
// State families

StateVector bell_state(const BellIndex& idx, const PhaseConvention& conv) {
  const int d = idx.d;
  BasisShape shape({d, d});
  std::vector<Complex> amps(shape.dimension());
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int n = 0; n < d; ++n) {
    const std::array<int, 2> label{n, mod(n + idx.j, d)};
    amps[shape.offset(label)] =
        root_of_unity(static_cast<long long>(conv.bell_sign) * idx.i * n, d) * scale;
  }
  return StateVector(std::move(shape), std::move(amps)).canonical_phase();
}

StateVector aux_state(int d) { return aux_state(AuxLabelMap::alphabetical(d)); }

StateVector aux_state(const AuxLabelMap& labels) {
  const int d = labels.d();
  BasisShape shape({d, d});
  std::vector<Complex> amps(shape.dimension());
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int p = 0; p < d; ++p) {
    const int digit = labels.digit(p);
    const std::array<int, 2> label{digit, digit};
    amps[shape.offset(label)] = scale;
  }
  return StateVector(std::move(shape), std::move(amps)).canonical_phase();
}

StateVector decomp_state(const DecompIndex& idx, const PhaseConvention& conv) {
  return decomp_state(idx, conv, AuxLabelMap::alphabetical(idx.d));
}

StateVector decomp_state(const DecompIndex& idx, const PhaseConvention& conv,
                         const AuxLabelMap& labels) {
  const int d = idx.d;
  if (labels.d() != d) throw DimensionError("label map dimension mismatch");
  BasisShape shape({d, d});
  std::vector<Complex> amps(shape.dimension());
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int q = 0; q < d; ++q) {
    const std::array<int, 2> label{q, labels.digit(mod(q - idx.m, d))};
    amps[shape.offset(label)] =
        root_of_unity(static_cast<long long>(conv.decomp_sign) * idx.k * q, d) * scale;
  }
  return StateVector(std::move(shape), std::move(amps)).canonical_phase();
}

// ---------------------------------------------------------------------------
// Preparation unitaries

UnitaryMatrix shift_matrix(int d) {
  if (d < 2) throw DimensionError("shift needs d >= 2");
  std::vector<Complex> e(static_cast<std::size_t>(d) * d);
  for (int n = 0; n < d; ++n) e[static_cast<std::size_t>(mod(n + 1, d)) * d + n] = 1.0;
  return UnitaryMatrix(d, std::move(e));
}

UnitaryMatrix clock_matrix(int d) {
  if (d < 2) throw DimensionError("clock needs d >= 2");
  std::vector<Complex> e(static_cast<std::size_t>(d) * d);
  for (int n = 0; n < d; ++n) e[static_cast<std::size_t>(n) * d + n] = root_of_unity(n, d);
  return UnitaryMatrix(d, std::move(e));
}

std::string ShiftClockWord::to_string() const {
  const std::string x = "X^" + std::to_string(shift_power);
  const std::string z = "Z^" + std::to_string(clock_power);
  return clock_first ? x + " " + z : z + " " + x;
}

CalibratedShiftClock calibrate_shift_clock(const BellIndex& idx,
                                           const PhaseConvention& conv) {
  const int d = idx.d;
  const StateVector reference = bell_state(BellIndex(d, 0, 0), conv);
  const StateVector target = bell_state(idx, conv);
  const UnitaryMatrix x = shift_matrix(d);
  const UnitaryMatrix z = clock_matrix(d);

  double best = 0.0;
  for (bool clock_first : {true, false}) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        const UnitaryMatrix xa = power(x, a);
        const UnitaryMatrix zb = power(z, b);
        UnitaryMatrix w = clock_first ? xa * zb : zb * xa;
        const double f = fidelity(target, apply_local_unitary(reference, w, 1));
        best = std::max(best, f);
        if (std::abs(f - 1.0) <= kLogicalTolerance) {
          return {ShiftClockWord{a, b, clock_first}, std::move(w), f};
        }
      }
    }
  }
  throw CalibrationFailure("no clock/shift monomial prepares psi_" +
                           std::to_string(idx.i) + std::to_string(idx.j) +
                           " at d=" + std::to_string(d) + " under " +
                           conv.to_string() + "; best fidelity " +
                           std::to_string(best));
}

UnitaryMatrix generalized_shift_clock(const BellIndex& idx,
                                      const PhaseConvention& conv) {
  return calibrate_shift_clock(idx, conv).unitary;
}

}  // namespace hdbsm
