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

// Printed decomposition tables, shipped verbatim (misprints included).
//
// Line format, one tuple per line:
//
//   i j : k m k' m'
//
// meaning a_km (x) a_k'm' appears in the expansion of psi_ij (x) phi.
// Blank lines and lines starting with '#' are ignored.

#pragma once

#include <string_view>
#include <vector>

#include "hdbsm/decomposition.hpp"

namespace hdbsm {

/// Parses the line format above for dimension d. Throws ParseError.
std::vector<TranscribedTuple> parse_transcription(std::string_view text, int d);

/// Raw text of core/data/table_one_d3.txt (81 tuples, d = 3).
std::string_view table_one_d3_text();
/// Raw text of core/data/psi23_d4.txt (16 tuples, d = 4).
std::string_view psi23_d4_text();

std::vector<TranscribedTuple> table_one_d3();
std::vector<TranscribedTuple> psi23_d4();

}  // namespace hdbsm
