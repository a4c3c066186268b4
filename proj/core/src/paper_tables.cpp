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

#include "hdbsm/paper_tables.hpp"

#include <sstream>
#include <string>

namespace hdbsm {

std::vector<TranscribedTuple> parse_transcription(std::string_view text, int d) {
  require_supported_dimension(d);
  std::vector<TranscribedTuple> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    int i = 0, j = 0, k = 0, m = 0, kp = 0, mp = 0;
    std::string colon, extra;
    if (!(fields >> i >> j >> colon) || colon != ":" ||
        !(fields >> k >> m >> kp >> mp) || (fields >> extra)) {
      throw ParseError("expected 'i j : k m k' m'', got '" + line + "'", line_no);
    }
    try {
      out.push_back({BellIndex(d, i, j), OutcomePair(d, k, m, kp, mp), line_no});
    } catch (const DimensionError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

std::vector<TranscribedTuple> table_one_d3() {
  return parse_transcription(table_one_d3_text(), 3);
}

std::vector<TranscribedTuple> psi23_d4() {
  return parse_transcription(psi23_d4_text(), 4);
}

}  // namespace hdbsm
