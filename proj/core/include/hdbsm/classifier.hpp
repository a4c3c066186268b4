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

// Bell state measurement by coincidence: every joint outcome (a_km on Bob,
// a_k'm' on Alice) decodes to exactly one Bell index.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hdbsm/decomposition.hpp"

namespace hdbsm {

/// Total map from all d^4 outcome pairs to a Bell index (or unreachable).
class DecodingTable {
 public:
  DecodingTable(int d, PhaseConvention convention,
                std::vector<std::optional<BellIndex>> classes);

  int d() const { return d_; }
  const PhaseConvention& convention() const { return convention_; }

  std::optional<BellIndex> lookup(const OutcomePair& pair) const {
    return classes_.at(pair.flat());
  }
  std::vector<OutcomePair> members(const BellIndex& bell) const;
  std::size_t unreachable_count() const;
  /// Every Bell index owns exactly d^2 pairs and none is unreachable.
  bool is_partition() const;

  friend bool operator==(const DecodingTable&, const DecodingTable&) = default;

 private:
  int d_;
  PhaseConvention convention_;
  std::vector<std::optional<BellIndex>> classes_;  // by OutcomePair::flat()
};

/// Derived from the supports of the d^2 decompositions. Throws Collision.
DecodingTable build_decoding_table(int d, const PhaseConvention& conv);

/// Derived from an index law alone: (k, k') -> i and j = (m' - m) mod d.
DecodingTable decoding_table_from_law(const IndexLaw& law, const PhaseConvention& conv);

/// Joint detection probabilities over all d^4 outcome pairs.
struct CoincidenceTable {
  int d = 2;
  std::vector<double> probabilities;  // by OutcomePair::flat()

  double at(const OutcomePair& pair) const { return probabilities.at(pair.flat()); }
  double total() const;
};

/// Throws NotNormalized if |norm - 1| exceeds this.
inline constexpr double kNormalizationTolerance = 1e-6;

/// |<a_km (x) a_k'm' | state>|^2 for a state of shape [d, d, d, d] ordered
/// [B sys, B aux, A sys, A aux].
CoincidenceTable coincidence_probabilities(const StateVector& state,
                                           const PhaseConvention& conv);

/// p * table + (1 - p) * uniform, the isotropic white-noise admixture.
CoincidenceTable white_noise_mixture(const CoincidenceTable& table, double p);

/// Uniform 1/d^4 table (the maximally mixed input).
CoincidenceTable uniform_table(int d);

struct Classification {
  BellIndex best;
  double confidence = 0.0;
  bool tie = false;
  std::vector<BellIndex> tied;      // classes within kLogicalTolerance of best
  std::vector<double> class_mass;   // by all_bell_indices(d) order
  double unreachable_mass = 0.0;
};

/// Aggregates probability by decoding class and picks the largest; ties go
/// to the lexicographically smallest (i, j) and are flagged.
Classification classify(const CoincidenceTable& table, const DecodingTable& decoding);
Classification classify(const StateVector& state, const DecodingTable& decoding);
Classification classify(const StateVector& state, const PhaseConvention& conv);

struct ShotRecord {
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  int d = 2;
  std::vector<std::uint64_t> counts;  // by OutcomePair::flat()

  std::uint64_t count(const OutcomePair& pair) const { return counts.at(pair.flat()); }

  friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

/// Multinomial draw of `shots` outcomes. The generator is std::mt19937_64
/// seeded with `seed`; each shot takes one 64-bit output, keeps its top 53
/// bits as a uniform u in [0, 1) and picks the first outcome whose cumulative
/// probability exceeds u times the table total. Entries at or below 1e-15
/// (round-off of exact zeros) are never drawn. Bit-exact across platforms.
ShotRecord sample_outcomes(const CoincidenceTable& table, std::uint64_t shots,
                           std::uint64_t seed);

}  // namespace hdbsm
