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

#include "hdbsm/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hdbsm {

namespace {

std::size_t outcome_count(int d) {
  const auto dd = static_cast<std::size_t>(d);
  return dd * dd * dd * dd;
}

constexpr double kSamplingFloor = 1e-15;

std::size_t bell_slot(const BellIndex& b) {
  return static_cast<std::size_t>(b.i) * b.d + b.j;
}

int require_two_particle_shape(const StateVector& state) {
  const auto radices = state.shape().radices();
  if (radices.size() != 4 || !std::all_of(radices.begin(), radices.end(),
                                          [&](int r) { return r == radices[0]; })) {
    throw ShapeMismatch("expected a two-particle state of shape [d, d, d, d]");
  }
  require_supported_dimension(radices[0]);
  return radices[0];
}

}  // namespace

// ---------------------------------------------------------------------------
// Decoding

DecodingTable::DecodingTable(int d, PhaseConvention convention,
                             std::vector<std::optional<BellIndex>> classes)
    : d_(d), convention_(convention), classes_(std::move(classes)) {
  require_supported_dimension(d);
  if (classes_.size() != outcome_count(d)) {
    throw ShapeMismatch("decoding table needs d^4 entries");
  }
}

std::vector<OutcomePair> DecodingTable::members(const BellIndex& bell) const {
  std::vector<OutcomePair> out;
  for (std::size_t f = 0; f < classes_.size(); ++f) {
    if (classes_[f] == bell) out.push_back(OutcomePair::from_flat(d_, f));
  }
  return out;
}

std::size_t DecodingTable::unreachable_count() const {
  return static_cast<std::size_t>(
      std::count(classes_.begin(), classes_.end(), std::nullopt));
}

bool DecodingTable::is_partition() const {
  if (unreachable_count() != 0) return false;
  std::vector<std::size_t> sizes(static_cast<std::size_t>(d_) * d_, 0);
  for (const auto& c : classes_) ++sizes[bell_slot(*c)];
  const auto expected = static_cast<std::size_t>(d_) * d_;
  return std::all_of(sizes.begin(), sizes.end(),
                     [&](std::size_t n) { return n == expected; });
}

DecodingTable build_decoding_table(int d, const PhaseConvention& conv) {
  require_supported_dimension(d);
  std::vector<std::optional<BellIndex>> classes(outcome_count(d));
  for (const auto& table : decompose_all(d, conv)) {
    for (const auto& [pair, c] : table.entries) {
      auto& slot = classes[pair.flat()];
      if (slot && *slot != table.bell) {
        throw Collision(pair.to_string() + " claimed by psi_" +
                        std::to_string(slot->i) + std::to_string(slot->j) +
                        " and psi_" + std::to_string(table.bell.i) +
                        std::to_string(table.bell.j));
      }
      slot = table.bell;
    }
  }
  return DecodingTable(d, conv, std::move(classes));
}

DecodingTable decoding_table_from_law(const IndexLaw& law, const PhaseConvention& conv) {
  const int d = law.d;
  require_supported_dimension(d);
  if (!law.m_law_holds) {
    throw InvalidArgument("cannot decode j without the m-law");
  }
  std::vector<std::optional<BellIndex>> classes(outcome_count(d));
  for (const auto& pair : all_outcome_pairs(d)) {
    const int j = mod(pair.alice.m - pair.bob.m, d);
    for (int i = 0; i < d; ++i) {
      if (mod(law.s * pair.bob.k + law.t * i, d) != pair.alice.k) continue;
      auto& slot = classes[pair.flat()];
      if (slot) {
        throw Collision(pair.to_string() + " decodes to several i under " +
                        law.to_string());
      }
      slot = BellIndex(d, i, j);
    }
  }
  return DecodingTable(d, conv, std::move(classes));
}

// ---------------------------------------------------------------------------
// Probabilities

double CoincidenceTable::total() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

CoincidenceTable coincidence_probabilities(const StateVector& state,
                                           const PhaseConvention& conv) {
  const int d = require_two_particle_shape(state);
  if (std::abs(state.norm() - 1.0) > kNormalizationTolerance) {
    throw NotNormalized("input state has norm " + std::to_string(state.norm()));
  }
  const std::size_t n = static_cast<std::size_t>(d) * d;

  // Row km holds conj(a_km) over the single-particle basis (sys, aux).
  std::vector<Complex> bra(n * n);
  for (const auto& idx : all_decomp_indices(d)) {
    const StateVector a = decomp_state(idx, conv);
    const std::size_t row = static_cast<std::size_t>(idx.k) * d + idx.m;
    for (std::size_t c = 0; c < n; ++c) bra[row * n + c] = std::conj(a[c]);
  }

  // Contract Bob's half, then Alice's.
  const auto psi = state.amplitudes();
  std::vector<Complex> half(n * n);
  for (std::size_t bob = 0; bob < n; ++bob) {
    for (std::size_t a = 0; a < n; ++a) {
      Complex sum = 0.0;
      for (std::size_t b = 0; b < n; ++b) sum += bra[bob * n + b] * psi[b * n + a];
      half[bob * n + a] = sum;
    }
  }
  CoincidenceTable table{d, std::vector<double>(n * n)};
  for (std::size_t bob = 0; bob < n; ++bob) {
    for (std::size_t alice = 0; alice < n; ++alice) {
      Complex sum = 0.0;
      for (std::size_t a = 0; a < n; ++a) sum += bra[alice * n + a] * half[bob * n + a];
      table.probabilities[bob * n + alice] = std::norm(sum);
    }
  }
  return table;
}

CoincidenceTable white_noise_mixture(const CoincidenceTable& table, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("noise parameter p must lie in [0, 1]");
  }
  const double floor = (1.0 - p) / static_cast<double>(outcome_count(table.d));
  CoincidenceTable out{table.d, table.probabilities};
  for (double& q : out.probabilities) q = p * q + floor;
  return out;
}

CoincidenceTable uniform_table(int d) {
  require_supported_dimension(d);
  const std::size_t n = outcome_count(d);
  return CoincidenceTable{d, std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

// ---------------------------------------------------------------------------
// Classification

Classification classify(const CoincidenceTable& table, const DecodingTable& decoding) {
  const int d = decoding.d();
  if (table.d != d || table.probabilities.size() != outcome_count(d)) {
    throw ShapeMismatch("coincidence table does not match decoding dimension");
  }
  Classification out;
  out.class_mass.assign(static_cast<std::size_t>(d) * d, 0.0);
  for (std::size_t f = 0; f < table.probabilities.size(); ++f) {
    const auto bell = decoding.lookup(OutcomePair::from_flat(d, f));
    if (bell) {
      out.class_mass[bell_slot(*bell)] += table.probabilities[f];
    } else {
      out.unreachable_mass += table.probabilities[f];
    }
  }
  const double best = *std::max_element(out.class_mass.begin(), out.class_mass.end());
  const auto indices = all_bell_indices(d);
  for (std::size_t s = 0; s < indices.size(); ++s) {
    if (out.class_mass[s] >= best - kLogicalTolerance) out.tied.push_back(indices[s]);
  }
  out.best = out.tied.front();
  out.confidence = out.class_mass[bell_slot(out.best)];
  out.tie = out.tied.size() > 1;
  return out;
}

Classification classify(const StateVector& state, const DecodingTable& decoding) {
  return classify(coincidence_probabilities(state, decoding.convention()), decoding);
}

Classification classify(const StateVector& state, const PhaseConvention& conv) {
  const int d = require_two_particle_shape(state);
  return classify(state, build_decoding_table(d, conv));
}

// ---------------------------------------------------------------------------
// Sampling

ShotRecord sample_outcomes(const CoincidenceTable& table, std::uint64_t shots,
                           std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be at least 1");
  const auto& probs = table.probabilities;
  if (probs.empty()) throw InvalidArgument("empty coincidence table");
  for (double q : probs) {
    if (!std::isfinite(q) || q < -kAlgebraicTolerance) {
      throw InvalidArgument("coincidence table has a negative or non-finite entry");
    }
  }

  std::vector<double> cdf(probs.size());
  double running = 0.0;
  for (std::size_t f = 0; f < probs.size(); ++f) {
    // Round-off residue of exactly-zero amplitudes never fires.
    if (probs[f] > kSamplingFloor) running += probs[f];
    cdf[f] = running;
  }
  if (running <= 0.0) throw InvalidArgument("coincidence table has zero mass");
  std::size_t last_positive = probs.size();
  while (last_positive-- > 0 && !(probs[last_positive] > kSamplingFloor)) {
  }

  ShotRecord record{seed, shots, table.d, std::vector<std::uint64_t>(probs.size(), 0)};
  std::mt19937_64 engine(seed);
  constexpr double kTwoToMinus53 = 1.0 / 9007199254740992.0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(engine() >> 11) * kTwoToMinus53 * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t f = static_cast<std::size_t>(it - cdf.begin());
    if (f >= probs.size()) f = last_positive;
    ++record.counts[f];
  }
  return record;
}

}  // namespace hdbsm
