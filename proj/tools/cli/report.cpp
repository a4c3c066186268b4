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

#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hdbsm::cli {

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void Report::check(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

double snap(double x) { return std::abs(x) < kPrintFloor ? 0.0 : x; }

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", snap(x));
  return buf;
}

Json to_json(const PhaseConvention& conv) {
  return Json{{"bell_sign", conv.bell_sign}, {"decomp_sign", conv.decomp_sign}, {"label", conv.to_string()}};
}

Json to_json(const BellIndex& idx) { return Json{{"i", idx.i}, {"j", idx.j}}; }

Json to_json(const DecompIndex& idx) { return Json{{"k", idx.k}, {"m", idx.m}}; }

Json to_json(const OutcomePair& pair) {
  return Json{{"k", pair.bob.k}, {"m", pair.bob.m}, {"k_prime", pair.alice.k}, {"m_prime", pair.alice.m}};
}

std::vector<std::string> pair_cells(const OutcomePair& pair) {
  return {std::to_string(pair.bob.k), std::to_string(pair.bob.m), std::to_string(pair.alice.k),
          std::to_string(pair.alice.m)};
}

Json document(const Report& report) {
  const RunConfig& c = report.config;
  Json convention = to_json(c.convention);
  convention["source"] = c.convention_source;
  Json checks = Json::array();
  for (const auto& check : report.checks) {
    checks.push_back(Json{{"name", check.name}, {"passed", check.passed}, {"detail", check.detail}});
  }
  return Json{{"schema_version", kSchemaVersion},
              {"command", report.command},
              {"config",
               {{"d", c.d},
                {"convention", convention},
                {"seed", c.seed},
                {"shots", c.shots},
                {"format", c.format == Format::json ? "json" : "csv"}}},
              {"payload", report.payload},
              {"checks", checks},
              {"passed", report.passed()}};
}

std::string render(const Report& report) {
  if (report.config.format == Format::json) return document(report).dump(2) + "\n";

  const RunConfig& c = report.config;
  std::ostringstream out;
  out << "# hdbsm " << report.command << " schema_version=" << kSchemaVersion << "\n";
  out << "# d=" << c.d << " convention=" << c.convention.to_string() << " source=" << c.convention_source
      << " seed=" << c.seed << " shots=" << c.shots << "\n";
  for (const auto& line : report.csv_metadata) out << "# " << line << "\n";
  for (const auto& check : report.checks) {
    out << "# check " << check.name << "=" << (check.passed ? "pass" : "fail") << "\n";
  }
  out << "# passed=" << (report.passed() ? "true" : "false") << "\n";
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t n = 0; n < cells.size(); ++n) out << (n ? "," : "") << cells[n];
    out << "\n";
  };
  emit(report.csv_header);
  for (const auto& row : report.csv_rows) emit(row);
  return out.str();
}

}  // namespace hdbsm::cli
