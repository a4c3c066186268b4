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

#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "hdbsm/classifier.hpp"
#include "report.hpp"

namespace hdbsm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the directory reports go to when -o is absent.
inline constexpr const char* kOutputDirEnv = "HDBSM_OUTPUT_DIR";

/// Empty argument: literal at d=2, auto otherwise. "auto" is rejected at d=2.
void resolve_convention(RunConfig& config, const std::string& argument);

Report cmd_decompose(const RunConfig& config, int i, int j);
Report cmd_verify(const RunConfig& config);
Report cmd_simulate(const RunConfig& config, int i, int j);

using ClassifyInput = std::variant<StateVector, CoincidenceTable>;

/// Header `d=<n>` then d^4 lines `re im`, or header `d=<n> probabilities`
/// then d^4 lines holding one probability each. '#' starts a comment.
ClassifyInput parse_state_file(std::istream& in);

Report cmd_classify(const RunConfig& config, const ClassifyInput& input);

/// Full command line entry point. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hdbsm::cli
