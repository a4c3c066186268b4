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

#include "hdbsm/optics.hpp"

#include <algorithm>
#include <cmath>

namespace hdbsm {

namespace {

int lowest_charge(int d) { return d % 2 == 1 ? -(d - 1) / 2 : -d / 2; }

int require_single_particle_shape(const StateVector& state) {
  const auto r = state.shape().radices();
  if (r.size() != 2 || r[0] != r[1]) {
    throw ShapeMismatch("expected a single-particle state of shape [d, d]");
  }
  return r[0];
}

}  // namespace

int oam_charge_to_digit(int charge, int d) {
  require_supported_dimension(d);
  const int digit = charge - lowest_charge(d);
  if (digit < 0 || digit >= d) {
    throw DimensionError("OAM charge " + std::to_string(charge) +
                         " outside the d=" + std::to_string(d) + " window");
  }
  return digit;
}

int digit_to_oam_charge(int digit, int d) {
  require_supported_dimension(d);
  if (digit < 0 || digit >= d) throw DimensionError("OAM digit out of range");
  return digit + lowest_charge(d);
}

ExpandedPath sort_mode(const PhotonModeLabel& mode, int d) {
  if (mode.path < 0 || mode.path >= d || mode.oam < 0 || mode.oam >= d) {
    throw DimensionError("photon mode label out of range");
  }
  return {mod(mode.path - mode.oam, d), mode.path};
}

PhotonModeLabel unsort_mode(const ExpandedPath& path, int d) {
  if (path.group < 0 || path.group >= d || path.port < 0 || path.port >= d) {
    throw DimensionError("expanded path out of range");
  }
  return {path.port, mod(path.port - path.group, d)};
}

BsaLayout::BsaLayout(int d, const PhaseConvention& conv) : d_(d) {
  require_supported_dimension(d);
  group_unitaries_.reserve(static_cast<std::size_t>(d));
  for (int g = 0; g < d; ++g) group_unitaries_.push_back(fourier_matrix(d, -conv.decomp_sign));
}

StateVector prepare_source(int d, const PhaseConvention& conv) {
  return hyperentangled_state(BellIndex(d, 0, 0), conv);
}

StateVector prepare_bell(int d, int i, int j, const PhaseConvention& conv) {
  const UnitaryMatrix w = generalized_shift_clock(BellIndex(d, i, j), conv);
  // Alice's system factor in [B sys, B aux, A sys, A aux].
  return apply_local_unitary(prepare_source(d, conv), w, 2);
}

StateVector oam_sort(const StateVector& single) {
  const int d = require_single_particle_shape(single);
  std::vector<Complex> out(single.dimension());
  for (int path = 0; path < d; ++path) {
    for (int oam = 0; oam < d; ++oam) {
      const ExpandedPath e = sort_mode({path, oam}, d);
      out[static_cast<std::size_t>(e.group) * d + e.port] =
          single[static_cast<std::size_t>(path) * d + oam];
    }
  }
  return StateVector(single.shape(), std::move(out));
}

StateVector oam_unsort(const StateVector& sorted) {
  const int d = require_single_particle_shape(sorted);
  std::vector<Complex> out(sorted.dimension());
  for (int group = 0; group < d; ++group) {
    for (int port = 0; port < d; ++port) {
      const PhotonModeLabel mode = unsort_mode({group, port}, d);
      out[static_cast<std::size_t>(mode.path) * d + mode.oam] =
          sorted[static_cast<std::size_t>(group) * d + port];
    }
  }
  return StateVector(sorted.shape(), std::move(out));
}

double DetectorAmplitudes::total_probability() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes) sum += std::norm(a);
  return sum;
}

DetectorAmplitudes analyse(const StateVector& sorted, const BsaLayout& layout) {
  const int d = require_single_particle_shape(sorted);
  if (d != layout.d()) {
    throw ShapeMismatch("analyser built for d=" + std::to_string(layout.d()) +
                        " fed a d=" + std::to_string(d) + " state");
  }
  DetectorAmplitudes out{d, std::vector<Complex>(sorted.dimension())};
  const auto amps = sorted.amplitudes();
  for (int g = 0; g < d; ++g) {
    const auto ports = amps.subspan(static_cast<std::size_t>(g) * d, static_cast<std::size_t>(d));
    const std::vector<Complex> outputs = layout.group_unitary(g).apply(ports);
    for (int r = 0; r < d; ++r) {
      const DecompIndex det = layout.detector(g, r);
      out.amplitudes[static_cast<std::size_t>(det.k) * d + det.m] = outputs[r];
    }
  }
  return out;
}

CoincidenceTable detector_coincidences(const StateVector& state, const BsaLayout& layout) {
  const auto radices = state.shape().radices();
  if (radices.size() != 4 || std::any_of(radices.begin(), radices.end(),
                                         [&](int r) { return r != layout.d(); })) {
    throw ShapeMismatch("expected a two-particle state of shape [d, d, d, d]");
  }
  const int d = layout.d();
  const std::size_t n = static_cast<std::size_t>(d) * d;
  const BasisShape single({d, d});
  const auto psi = state.amplitudes();

  // Bob's photon through his analyser, one Alice mode at a time.
  std::vector<Complex> after_bob(n * n);
  std::vector<Complex> column(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) column[b] = psi[b * n + a];
    const DetectorAmplitudes det = analyse(oam_sort(StateVector(single, column)), layout);
    for (std::size_t k = 0; k < n; ++k) after_bob[k * n + a] = det.amplitudes[k];
  }

  // Then Alice's photon, one Bob detector at a time.
  CoincidenceTable table{d, std::vector<double>(n * n)};
  std::vector<Complex> row(n);
  for (std::size_t bob = 0; bob < n; ++bob) {
    std::copy_n(after_bob.begin() + static_cast<std::ptrdiff_t>(bob * n), n, row.begin());
    const DetectorAmplitudes det = analyse(oam_sort(StateVector(single, row)), layout);
    for (std::size_t alice = 0; alice < n; ++alice) {
      table.probabilities[bob * n + alice] = std::norm(det.amplitudes[alice]);
    }
  }
  return table;
}

ExperimentResult run_experiment(int d, int i, int j, std::uint64_t shots,
                                std::uint64_t seed, const PhaseConvention& conv) {
  StateVector prepared = prepare_bell(d, i, j, conv);
  CoincidenceTable probabilities = detector_coincidences(prepared, BsaLayout(d, conv));
  std::optional<ShotRecord> record;
  if (shots > 0) record = sample_outcomes(probabilities, shots, seed);
  return {std::move(prepared), std::move(probabilities), std::move(record)};
}

double pipeline_deviation(int d, int i, int j, const PhaseConvention& conv) {
  const StateVector prepared = prepare_bell(d, i, j, conv);
  const CoincidenceTable optical = detector_coincidences(prepared, BsaLayout(d, conv));
  const CoincidenceTable abstract = coincidence_probabilities(prepared, conv);
  double worst = 0.0;
  for (std::size_t f = 0; f < optical.probabilities.size(); ++f) {
    worst = std::max(worst, std::abs(optical.probabilities[f] - abstract.probabilities[f]));
  }
  return worst;
}

}  // namespace hdbsm
