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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hdbsm/decomposition.hpp"

namespace hdbsm::cli {

using Json = nlohmann::ordered_json;

/// Bumped on any change to report field names or meaning.
inline constexpr int kSchemaVersion = 1;

enum class Format { json, csv };

/// Bad arguments or input files; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int d = 3;
  PhaseConvention convention;
  std::string convention_source;  // "explicit", "auto" or "default"
  std::uint64_t seed = 1;
  std::uint64_t shots = 0;
  Format format = Format::json;
  std::string output;  // empty means stdout or the output directory
};

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct Report {
  std::string command;
  RunConfig config;
  Json payload;
  std::vector<Check> checks;
  // CSV rendering: leading "# key=value" lines, then a header and rows.
  std::vector<std::string> csv_metadata;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;

  bool passed() const;
  void check(std::string name, bool passed, std::string detail);
};

/// Values below this magnitude print as exact zero.
inline constexpr double kPrintFloor = 1e-15;

double snap(double x);
std::string format_number(double x);
Json to_json(const PhaseConvention& conv);
Json to_json(const BellIndex& idx);
Json to_json(const DecompIndex& idx);
Json to_json(const OutcomePair& pair);
std::vector<std::string> pair_cells(const OutcomePair& pair);

Json document(const Report& report);
std::string render(const Report& report);

}  // namespace hdbsm::cli
