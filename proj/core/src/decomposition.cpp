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

#include "hdbsm/decomposition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "hdbsm/paper_tables.hpp"

namespace hdbsm {

namespace {

// [B sys, A sys] (x) [B aux, A aux] -> [B sys, B aux, A sys, A aux]
constexpr std::array<std::size_t, 4> kRegroup{0, 2, 1, 3};

std::string bell_name(const BellIndex& b) {
  return "psi_" + std::to_string(b.i) + std::to_string(b.j);
}

// Checks that `tables` holds one table per Bell index of one (d, convention).
int validate_table_set(const std::vector<DecompositionTable>& tables) {
  if (tables.empty()) throw DimensionError("no decomposition tables given");
  const int d = tables.front().bell.d;
  const PhaseConvention conv = tables.front().convention;
  std::set<BellIndex> seen;
  for (const auto& t : tables) {
    if (t.bell.d != d || !(t.convention == conv)) {
      throw DimensionError("tables mix dimensions or conventions");
    }
    seen.insert(t.bell);
  }
  if (seen.size() != tables.size() ||
      seen.size() != static_cast<std::size_t>(d) * d) {
    throw DimensionError("expected exactly one table per Bell index (" +
                         std::to_string(d * d) + "), got " +
                         std::to_string(tables.size()));
  }
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// OutcomePair

OutcomePair::OutcomePair(DecompIndex bob, DecompIndex alice) : bob(bob), alice(alice) {
  if (bob.d != alice.d) throw DimensionError("outcome pair mixes dimensions");
}

std::size_t OutcomePair::flat() const {
  const auto d = static_cast<std::size_t>(bob.d);
  return ((static_cast<std::size_t>(bob.k) * d + bob.m) * d + alice.k) * d + alice.m;
}

OutcomePair OutcomePair::from_flat(int d, std::size_t offset) {
  const auto dd = static_cast<std::size_t>(d);
  if (offset >= dd * dd * dd * dd) throw DimensionError("outcome offset out of range");
  const int m_prime = static_cast<int>(offset % dd);
  offset /= dd;
  const int k_prime = static_cast<int>(offset % dd);
  offset /= dd;
  const int m = static_cast<int>(offset % dd);
  const int k = static_cast<int>(offset / dd);
  return OutcomePair(d, k, m, k_prime, m_prime);
}

std::string OutcomePair::to_string() const {
  return "a_" + std::to_string(bob.k) + std::to_string(bob.m) + " x a_" +
         std::to_string(alice.k) + std::to_string(alice.m);
}

std::vector<OutcomePair> all_outcome_pairs(int d) {
  const std::size_t n = static_cast<std::size_t>(d) * d * d * d;
  std::vector<OutcomePair> out;
  out.reserve(n);
  for (std::size_t f = 0; f < n; ++f) out.push_back(OutcomePair::from_flat(d, f));
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition

StateVector hyperentangled_state(const BellIndex& idx, const PhaseConvention& conv,
                                 const AuxLabelMap& labels) {
  const StateVector joint = tensor_product(bell_state(idx, conv), aux_state(labels));
  return permute_factors(joint, kRegroup).canonical_phase();
}

StateVector hyperentangled_state(const BellIndex& idx, const PhaseConvention& conv) {
  return hyperentangled_state(idx, conv, AuxLabelMap::alphabetical(idx.d));
}

double DecompositionTable::total_probability() const {
  double sum = 0.0;
  for (const auto& [pair, c] : entries) sum += std::norm(c);
  return sum;
}

std::vector<OutcomePair> DecompositionTable::support() const {
  std::vector<OutcomePair> out;
  out.reserve(entries.size());
  for (const auto& [pair, c] : entries) out.push_back(pair);
  return out;
}

DecompositionTable decompose(const BellIndex& idx, const PhaseConvention& conv,
                             const AuxLabelMap& labels) {
  const int d = idx.d;
  const StateVector target = hyperentangled_state(idx, conv, labels);

  std::vector<StateVector> basis;
  const auto indices = all_decomp_indices(d);
  basis.reserve(indices.size());
  for (const auto& di : indices) basis.push_back(decomp_state(di, conv, labels));

  DecompositionTable table{idx, conv, {}};
  for (std::size_t b = 0; b < indices.size(); ++b) {
    for (std::size_t a = 0; a < indices.size(); ++a) {
      const Complex c = inner_product(tensor_product(basis[b], basis[a]), target);
      if (std::abs(c) > kLogicalTolerance) {
        table.entries.emplace(OutcomePair(indices[b], indices[a]), c);
      }
    }
  }
  return table;
}

DecompositionTable decompose(const BellIndex& idx, const PhaseConvention& conv) {
  return decompose(idx, conv, AuxLabelMap::alphabetical(idx.d));
}

std::vector<DecompositionTable> decompose_all(int d, const PhaseConvention& conv) {
  std::vector<DecompositionTable> out;
  for (const auto& idx : all_bell_indices(d)) out.push_back(decompose(idx, conv));
  return out;
}

StateVector reconstruct(const DecompositionTable& table) {
  const int d = table.bell.d;
  StateVector sum = StateVector::zero(BasisShape({d, d, d, d}));
  for (const auto& [pair, c] : table.entries) {
    sum = sum + tensor_product(decomp_state(pair.bob, table.convention),
                               decomp_state(pair.alice, table.convention)) * c;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Index law

DecompIndex IndexLaw::predict(const BellIndex& bell, const DecompIndex& bob) const {
  const int k_prime = mod(static_cast<long long>(s) * bob.k + static_cast<long long>(t) * bell.i, d);
  const int m_prime = mod(bob.m + bell.j, d);
  return DecompIndex(d, k_prime, m_prime);
}

bool IndexLaw::is_general_law() const {
  return s == d - 1 && t == d - 1 && m_law_holds;
}

std::string IndexLaw::to_string() const {
  return "k' = (" + std::to_string(s) + "k + " + std::to_string(t) + "i) mod " +
         std::to_string(d) + (m_law_holds ? ", m' = (m + j) mod " + std::to_string(d)
                                          : ", m-law violated");
}

IndexLaw general_index_law(int d) { return IndexLaw{d, d - 1, d - 1, true}; }

IndexLaw fit_index_law(const std::vector<DecompositionTable>& tables) {
  const int d = validate_table_set(tables);

  std::vector<std::pair<int, int>> fits;
  for (int s = 0; s < d; ++s) {
    for (int t = 0; t < d; ++t) {
      bool ok = true;
      for (const auto& table : tables) {
        for (const auto& [pair, c] : table.entries) {
          if (pair.alice.k != mod(s * pair.bob.k + t * table.bell.i, d)) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) fits.emplace_back(s, t);
    }
  }
  if (fits.empty()) {
    throw NoAffineLaw("support is not affine in (k, i) at d=" + std::to_string(d));
  }
  if (fits.size() > 1) {
    throw NoAffineLaw("affine law is not unique at d=" + std::to_string(d));
  }

  bool m_law = true;
  for (const auto& table : tables) {
    for (const auto& [pair, c] : table.entries) {
      if (pair.alice.m != mod(pair.bob.m + table.bell.j, d)) m_law = false;
    }
  }
  return IndexLaw{d, fits.front().first, fits.front().second, m_law};
}

// ---------------------------------------------------------------------------
// Phase law

std::optional<int> phase_exponent(Complex coefficient, int d) {
  const double angle = std::arg(coefficient);
  const double step = 2.0 * std::numbers::pi / d;
  const double r = std::round(angle / step);
  if (std::abs(angle - r * step) > kLogicalTolerance) return std::nullopt;
  return mod(static_cast<long long>(r), d);
}

PhaseLaw fit_phase_law(const std::vector<DecompositionTable>& tables) {
  const int d = validate_table_set(tables);
  PhaseLaw law;
  law.d = d;

  struct Sample {
    int k_prime, i, j, r;
  };
  std::vector<Sample> samples;
  for (const auto& table : tables) {
    for (const auto& [pair, c] : table.entries) {
      const auto r = phase_exponent(c, d);
      if (!r) {
        throw PhaseNotRootOfUnity("coefficient of " + pair.to_string() + " in " +
                                  bell_name(table.bell) + " has phase " +
                                  std::to_string(std::arg(c)) +
                                  " rad, not a multiple of 2pi/" + std::to_string(d));
      }
      law.table[PhaseLaw::Key{pair.bob.k, pair.bob.m, table.bell.i, table.bell.j}] = *r;
      samples.push_back({pair.alice.k, table.bell.i, table.bell.j, *r});
    }
  }

  for (int u = 0; u < d && !law.closed_form; ++u) {
    for (int v = 0; v < d && !law.closed_form; ++v) {
      for (int w = 0; w < d && !law.closed_form; ++w) {
        const bool fits = std::all_of(samples.begin(), samples.end(), [&](const Sample& s) {
          return mod(u * s.k_prime * s.j + v * s.i * s.j + w, d) == s.r;
        });
        if (fits) law.closed_form = PhaseClosedForm{u, v, w};
      }
    }
  }
  return law;
}

// ---------------------------------------------------------------------------
// Convention search

ConventionSearch find_convention(int d) {
  require_supported_dimension(d);
  if (d < 3) {
    throw DimensionError("convention search needs d >= 3; at d=2 all conventions coincide");
  }
  ConventionSearch search;
  search.d = d;
  for (const auto& conv : PhaseConvention::all()) {
    const IndexLaw law = fit_index_law(decompose_all(d, conv));
    const bool match = law.is_general_law();
    search.candidates.push_back({conv, law, match});
    if (match) {
      if (search.matching.empty()) {
        search.convention = conv;
        search.law = law;
      }
      search.matching.push_back(conv);
    }
  }
  if (search.matching.empty()) {
    throw NoneMatch("no sign convention reproduces k' = ((d-1)k + (d-1)i) mod d at d=" +
                    std::to_string(d));
  }
  return search;
}

// ---------------------------------------------------------------------------
// Audits

std::vector<DiscrepancyReport> audit_transcription(
    const std::string& source, const std::vector<TranscribedTuple>& printed,
    const std::map<BellIndex, std::map<DecompIndex, DecompIndex>>& expected) {
  // Rows in order of first appearance.
  std::vector<BellIndex> order;
  std::map<BellIndex, std::vector<OutcomePair>> rows;
  for (const auto& t : printed) {
    auto [it, inserted] = rows.try_emplace(t.bell);
    if (inserted) order.push_back(t.bell);
    it->second.push_back(t.pair);
  }

  std::vector<DiscrepancyReport> reports;
  for (const auto& bell : order) {
    const auto exp_it = expected.find(bell);
    if (exp_it == expected.end()) {
      throw DimensionError("no expected support for " + bell_name(bell));
    }
    const auto& law = exp_it->second;
    const auto& row = rows.at(bell);

    DiscrepancyReport report;
    report.source = source;
    report.bell = bell;
    report.printed_count = row.size();

    std::map<OutcomePair, int> counts;
    for (const auto& pair : row) {
      if (++counts[pair] == 2) report.duplicates.push_back(pair);
      const DecompIndex predicted = law.at(pair.bob);
      if (pair.alice == predicted) {
        report.matches.push_back(pair);
      } else {
        report.mismatches.push_back({pair, OutcomePair(pair.bob, predicted)});
      }
    }
    for (const auto& [bob, alice] : law) {
      const OutcomePair pair(bob, alice);
      if (!counts.contains(pair)) report.missing.push_back(pair);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

namespace {

std::vector<TranscribedTuple> shipped_transcription(int d, std::string& source) {
  if (d == 3) {
    source = "table_one_d3";
    return table_one_d3();
  }
  if (d == 4) {
    source = "psi23_d4";
    return psi23_d4();
  }
  throw DimensionError("no printed table ships for d=" + std::to_string(d));
}

}  // namespace

std::vector<DiscrepancyReport> audit_paper_tables(int d, const PhaseConvention& conv) {
  std::string source;
  const auto printed = shipped_transcription(d, source);
  std::map<BellIndex, std::map<DecompIndex, DecompIndex>> expected;
  for (const auto& t : printed) {
    if (expected.contains(t.bell)) continue;
    auto& law = expected[t.bell];
    for (const auto& [pair, c] : decompose(t.bell, conv).entries) {
      law.emplace(pair.bob, pair.alice);
    }
  }
  return audit_transcription(source, printed, expected);
}

std::vector<DiscrepancyReport> audit_against_law(int d, const IndexLaw& law) {
  if (law.d != d) throw DimensionError("law dimension mismatch");
  std::string source;
  const auto printed = shipped_transcription(d, source);
  std::map<BellIndex, std::map<DecompIndex, DecompIndex>> expected;
  for (const auto& t : printed) {
    if (expected.contains(t.bell)) continue;
    auto& row = expected[t.bell];
    for (const auto& bob : all_decomp_indices(d)) row.emplace(bob, law.predict(t.bell, bob));
  }
  return audit_transcription(source, printed, expected);
}

}  // namespace hdbsm
