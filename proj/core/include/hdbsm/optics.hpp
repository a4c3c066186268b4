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

// Ideal-amplitude model of the path/OAM experiment:
//
//   source      (sum_n |nn>) (x) (sum_p |pp>) / d        path = system DOF,
//   preparation clock/shift word on Alice's path         OAM  = auxiliary DOF
//   analyser    OAM sorter (path, oam) -> (group, port), then one d-point
//               conjugate Fourier transform per group
//   detection   detector (group g, output port r) reads out a_{r,g}
//
// The sorter sends path q with OAM digit q - m to group m, port q, so each
// group carries exactly the support of {a_km}_k for one m.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hdbsm/classifier.hpp"

namespace hdbsm {

/// OAM charge -> auxiliary digit. Charges run from -(d-1)/2 upward for odd d
/// (d = 3: -1 -> 0 (a), 0 -> 1 (b), +1 -> 2 (c)) and from -d/2 for even d.
int oam_charge_to_digit(int charge, int d);
int digit_to_oam_charge(int digit, int d);

struct PhotonModeLabel {
  int path = 0;
  int oam = 0;  // auxiliary digit, not the charge
};

struct ExpandedPath {
  int group = 0;
  int port = 0;
};

ExpandedPath sort_mode(const PhotonModeLabel& mode, int d);
PhotonModeLabel unsort_mode(const ExpandedPath& path, int d);

class BsaLayout {
 public:
  /// One fourier_matrix(d, -decomp_sign) per group.
  BsaLayout(int d, const PhaseConvention& conv);

  int d() const { return d_; }
  const UnitaryMatrix& group_unitary(int group) const { return group_unitaries_.at(group); }
  /// Detector (group, output port) reads a_km with m = group, k = port.
  DecompIndex detector(int group, int port) const { return DecompIndex(d_, port, group); }

 private:
  int d_;
  std::vector<UnitaryMatrix> group_unitaries_;
};

/// Bell(0,0) (x) phi regrouped to [B sys, B aux, A sys, A aux].
StateVector prepare_source(int d, const PhaseConvention& conv);

/// Source with the calibrated clock/shift word applied to Alice's path.
StateVector prepare_bell(int d, int i, int j, const PhaseConvention& conv);

/// Relabels a single-particle state [path, oam] to [group, port].
StateVector oam_sort(const StateVector& single);
StateVector oam_unsort(const StateVector& sorted);

/// Detector amplitudes of one particle, indexed by DecompIndex (k d + m).
struct DetectorAmplitudes {
  int d = 2;
  std::vector<Complex> amplitudes;

  Complex at(const DecompIndex& idx) const {
    return amplitudes.at(static_cast<std::size_t>(idx.k) * d + idx.m);
  }
  double total_probability() const;
};

/// Runs each group's unitary over a sorted single-particle state.
DetectorAmplitudes analyse(const StateVector& sorted, const BsaLayout& layout);

/// Joint detector distribution of a two-particle [B sys, B aux, A sys, A aux]
/// state sent through two analysers, one per particle.
CoincidenceTable detector_coincidences(const StateVector& state, const BsaLayout& layout);

struct ExperimentResult {
  StateVector prepared;
  CoincidenceTable probabilities;
  std::optional<ShotRecord> shots;  // absent when zero shots were requested
};

/// prepare_bell -> sort -> analyse -> coincidences -> sample.
ExperimentResult run_experiment(int d, int i, int j, std::uint64_t shots,
                                std::uint64_t seed, const PhaseConvention& conv);

/// Largest entrywise gap between the optical and the abstract coincidence
/// tables for Bell input (i, j).
double pipeline_deviation(int d, int i, int j, const PhaseConvention& conv);

}  // namespace hdbsm
