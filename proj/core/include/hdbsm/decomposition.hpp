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

// Expansion of the hyperentangled states psi_ij (x) phi over products of
// single-particle decomposition states, a_km on Bob's side (first) times
// a_k'm' on Alice's side (second), plus fitting of the index and phase laws
// and auditing of printed tables.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdbsm/bell_basis.hpp"
#include "hdbsm/qudit.hpp"

namespace hdbsm {

/// Joint single-particle outcome: Bob's a_km and Alice's a_k'm'.
struct OutcomePair {
  DecompIndex bob;
  DecompIndex alice;

  OutcomePair() = default;
  OutcomePair(DecompIndex bob, DecompIndex alice);
  OutcomePair(int d, int k, int m, int k_prime, int m_prime)
      : OutcomePair(DecompIndex(d, k, m), DecompIndex(d, k_prime, m_prime)) {}

  int d() const { return bob.d; }
  /// Offset ((k d + m) d + k') d + m' in [0, d^4).
  std::size_t flat() const;
  static OutcomePair from_flat(int d, std::size_t offset);
  std::string to_string() const;

  friend auto operator<=>(const OutcomePair&, const OutcomePair&) = default;
};

/// All d^4 outcome pairs in flat order.
std::vector<OutcomePair> all_outcome_pairs(int d);

/// The regrouped joint state psi_ij (x) phi over factors
/// [B system, B aux, A system, A aux].
StateVector hyperentangled_state(const BellIndex& idx, const PhaseConvention& conv,
                                 const AuxLabelMap& labels);
StateVector hyperentangled_state(const BellIndex& idx, const PhaseConvention& conv);

/// Nonzero coefficients of psi_ij (x) phi in the product decomposition basis.
struct DecompositionTable {
  BellIndex bell;
  PhaseConvention convention;
  std::map<OutcomePair, Complex> entries;  // |c| > kLogicalTolerance only

  double total_probability() const;
  std::vector<OutcomePair> support() const;
};

/// Brute-force expansion by explicit inner products against every product
/// a_km (x) a_k'm'.
DecompositionTable decompose(const BellIndex& idx, const PhaseConvention& conv,
                             const AuxLabelMap& labels);
DecompositionTable decompose(const BellIndex& idx, const PhaseConvention& conv);

/// One table per Bell index, in all_bell_indices(d) order.
std::vector<DecompositionTable> decompose_all(int d, const PhaseConvention& conv);

/// sum_c c * a_km (x) a_k'm', the state a table describes.
StateVector reconstruct(const DecompositionTable& table);

/// k' = (s k + t i) mod d on the whole support, optionally m' = (m + j) mod d.
struct IndexLaw {
  int d = 2;
  int s = 0;
  int t = 0;
  bool m_law_holds = false;

  /// Alice's index predicted for Bob's (k, m) under Bell index (i, j).
  DecompIndex predict(const BellIndex& bell, const DecompIndex& bob) const;
  /// True for s = t = d - 1 with the m-law, the general-dimension claim.
  bool is_general_law() const;
  std::string to_string() const;

  friend bool operator==(const IndexLaw&, const IndexLaw&) = default;
};

/// The law k' = ((d-1) k + (d-1) i) mod d, m' = (m + j) mod d.
IndexLaw general_index_law(int d);

/// Requires exactly one table per Bell index of a single (d, convention).
/// Throws NoAffineLaw when no (s, t) reproduces every support tuple.
IndexLaw fit_index_law(const std::vector<DecompositionTable>& tables);

/// Fitted closed form r = u k' j + v i j + w (mod d).
struct PhaseClosedForm {
  int u = 0;
  int v = 0;
  int w = 0;
};

/// Every coefficient phase as an exact d-th root of unity exp(2 pi i r / d).
struct PhaseLaw {
  struct Key {
    int k, m, i, j;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  int d = 2;
  std::map<Key, int> table;
  std::optional<PhaseClosedForm> closed_form;

  /// r for Bob's (k, m) under Bell index (i, j); throws std::out_of_range.
  int at(int k, int m, int i, int j) const { return table.at(Key{k, m, i, j}); }
};

/// Throws PhaseNotRootOfUnity if any phase misses every 2 pi r / d by more
/// than kLogicalTolerance radians.
PhaseLaw fit_phase_law(const std::vector<DecompositionTable>& tables);

/// Root-of-unity exponent r of a coefficient, or nullopt.
std::optional<int> phase_exponent(Complex coefficient, int d);

struct ConventionCandidate {
  PhaseConvention convention;
  IndexLaw law;
  bool matches_general_law;
};

struct ConventionSearch {
  int d = 3;
  std::vector<ConventionCandidate> candidates;  // all four, search order
  std::vector<PhaseConvention> matching;        // those with s = t = d - 1
  PhaseConvention convention;                   // first match
  IndexLaw law;                                 // its fitted law
};

/// Exhaustive search over the four sign conventions for those reproducing
/// the general law. Requires d >= 3; throws NoneMatch if none does.
ConventionSearch find_convention(int d);

/// One printed tuple.
struct TranscribedTuple {
  BellIndex bell;
  OutcomePair pair;
  int line = 0;
};

struct TupleMismatch {
  OutcomePair printed;
  OutcomePair computed;  // the computed support tuple with the same (k, m)
};

/// Diff of one printed row (one Bell index) against an expected support.
/// Each printed position lands in exactly one of matches / mismatches.
struct DiscrepancyReport {
  std::string source;
  BellIndex bell;
  std::vector<OutcomePair> matches;
  std::vector<TupleMismatch> mismatches;
  std::vector<OutcomePair> duplicates;  // printed more than once
  std::vector<OutcomePair> missing;     // expected but never printed
  std::size_t printed_count = 0;

  bool clean() const { return mismatches.empty() && duplicates.empty() && missing.empty(); }
};

/// Compares printed rows grouped by Bell index against `expected`, which maps
/// each Bob index to the Alice index it pairs with.
std::vector<DiscrepancyReport> audit_transcription(
    const std::string& source, const std::vector<TranscribedTuple>& printed,
    const std::map<BellIndex, std::map<DecompIndex, DecompIndex>>& expected);

/// Audits the shipped transcription for d (3: decomposition table, 4: psi_23
/// listing) against brute-force decompositions under `conv`.
std::vector<DiscrepancyReport> audit_paper_tables(int d, const PhaseConvention& conv);

/// Audits the shipped transcription for d against an index law.
std::vector<DiscrepancyReport> audit_against_law(int d, const IndexLaw& law);

}  // namespace hdbsm
