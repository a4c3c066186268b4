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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "hdbsm/optics.hpp"

#ifndef HDBSM_VERSION
#define HDBSM_VERSION "unknown"
#endif

namespace hdbsm::cli {

namespace {

std::string bell_label(const BellIndex& idx) {
  return "psi_" + std::to_string(idx.i) + std::to_string(idx.j);
}

BellIndex checked_bell(int d, int i, int j) {
  if (i < 0 || i >= d || j < 0 || j >= d) {
    throw UsageError("Bell index (" + std::to_string(i) + "," + std::to_string(j) +
                     ") outside 0.." + std::to_string(d - 1));
  }
  return BellIndex(d, i, j);
}

Json law_json(const IndexLaw& law) {
  return Json{{"s", law.s}, {"t", law.t}, {"m_law_holds", law.m_law_holds},
              {"general_law", law.is_general_law()}, {"text", law.to_string()}};
}

// Support size, magnitude, total probability and m-law over a table set.
void structure_checks(Report& report, const std::vector<DecompositionTable>& tables, int d) {
  bool support_ok = true;
  bool m_law_ok = true;
  double worst_magnitude = 0.0;
  double worst_total = 0.0;
  for (const auto& table : tables) {
    support_ok = support_ok && table.entries.size() == static_cast<std::size_t>(d * d);
    for (const auto& [pair, c] : table.entries) {
      worst_magnitude = std::max(worst_magnitude, std::abs(std::abs(c) - 1.0 / d));
      m_law_ok = m_law_ok && pair.alice.m == mod(pair.bob.m + table.bell.j, d);
    }
    worst_total = std::max(worst_total, std::abs(table.total_probability() - 1.0));
  }
  report.check("support_size", support_ok, "every table has d^2 nonzero coefficients");
  report.check("coefficient_magnitude", worst_magnitude <= kLogicalTolerance,
               "max ||c| - 1/d| = " + format_number(worst_magnitude));
  report.check("total_probability", worst_total <= kLogicalTolerance,
               "max |sum |c|^2 - 1| = " + format_number(worst_total));
  report.check("m_law", m_law_ok, "m' = (m + j) mod d on every tuple");
}

Json discrepancy_json(const DiscrepancyReport& r) {
  Json mismatches = Json::array();
  for (const auto& m : r.mismatches) {
    mismatches.push_back(Json{{"printed", to_json(m.printed)}, {"computed", to_json(m.computed)}});
  }
  Json duplicates = Json::array();
  for (const auto& p : r.duplicates) duplicates.push_back(to_json(p));
  Json missing = Json::array();
  for (const auto& p : r.missing) missing.push_back(to_json(p));
  return Json{{"source", r.source},  {"bell", to_json(r.bell)},
              {"printed_count", r.printed_count}, {"matches", r.matches.size()},
              {"mismatches", mismatches}, {"duplicates", duplicates},
              {"missing", missing}};
}

void discrepancy_rows(Report& report, const PhaseConvention& conv,
                      const std::vector<DiscrepancyReport>& reports) {
  for (const auto& r : reports) {
    auto row = [&](const std::string& kind, const OutcomePair& printed, const OutcomePair* computed) {
      std::vector<std::string> cells = {conv.to_string(), r.source, std::to_string(r.bell.i),
                                        std::to_string(r.bell.j), kind};
      for (auto& c : pair_cells(printed)) cells.push_back(c);
      cells.push_back(computed ? std::to_string(computed->alice.k) : "");
      cells.push_back(computed ? std::to_string(computed->alice.m) : "");
      report.csv_rows.push_back(std::move(cells));
    };
    for (const auto& m : r.mismatches) row("mismatch", m.printed, &m.computed);
    for (const auto& p : r.duplicates) row("duplicate", p, nullptr);
    for (const auto& p : r.missing) row("missing", p, nullptr);
  }
}

std::size_t finding_count(const std::vector<DiscrepancyReport>& reports) {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.mismatches.size() + r.duplicates.size() + r.missing.size();
  return n;
}

Json classification_json(const Classification& c, int d) {
  Json tied = Json::array();
  for (const auto& idx : c.tied) tied.push_back(to_json(idx));
  Json classes = Json::array();
  const auto indices = all_bell_indices(d);
  for (std::size_t n = 0; n < indices.size(); ++n) {
    classes.push_back(Json{{"i", indices[n].i}, {"j", indices[n].j}, {"mass", snap(c.class_mass[n])}});
  }
  return Json{{"best", to_json(c.best)}, {"confidence", snap(c.confidence)}, {"tie", c.tie},
              {"tied", tied}, {"class_distribution", classes},
              {"unreachable_mass", snap(c.unreachable_mass)}};
}

std::string default_file_name(const Report& report, const std::optional<BellIndex>& bell) {
  std::string name = report.command + "-d" + std::to_string(report.config.d);
  if (bell) name += "-i" + std::to_string(bell->i) + "-j" + std::to_string(bell->j);
  return name + (report.config.format == Format::json ? ".json" : ".csv");
}

void emit(const Report& report, const std::optional<BellIndex>& bell, std::ostream& out,
          std::ostream& err) {
  const std::string text = render(report);
  std::filesystem::path target;
  if (!report.config.output.empty()) {
    target = report.config.output;
  } else if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
    target = std::filesystem::path(dir) / default_file_name(report, bell);
  } else {
    out << text;
    return;
  }
  std::ofstream file(target, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + target.string());
  file << text;
  err << "wrote " << target.string() << "\n";
}

}  // namespace

void resolve_convention(RunConfig& config, const std::string& argument) {
  if (argument.empty()) {
    if (config.d == 2) {
      config.convention = PhaseConvention::literal();
      config.convention_source = "default";
    } else {
      config.convention = find_convention(config.d).convention;
      config.convention_source = "auto";
    }
    return;
  }
  if (argument == "auto") {
    if (config.d == 2) {
      throw UsageError("--convention auto is undefined at d=2 where every convention coincides");
    }
    config.convention = find_convention(config.d).convention;
    config.convention_source = "auto";
    return;
  }
  try {
    config.convention = PhaseConvention::parse(argument);
  } catch (const Error& e) {
    throw UsageError(std::string("bad --convention: ") + e.what());
  }
  config.convention_source = "explicit";
}

Report cmd_decompose(const RunConfig& config, int i, int j) {
  const int d = config.d;
  const BellIndex bell = checked_bell(d, i, j);
  const DecompositionTable table = decompose(bell, config.convention);

  Report report{"decompose", config, {}, {}, {}, {}, {}};
  Json tuples = Json::array();
  for (const auto& [pair, c] : table.entries) {
    const auto r = phase_exponent(c, d);
    Json entry = to_json(pair);
    entry["re"] = snap(c.real());
    entry["im"] = snap(c.imag());
    entry["magnitude"] = snap(std::abs(c));
    entry["phase_r"] = r ? Json(*r) : Json(nullptr);
    tuples.push_back(std::move(entry));

    auto cells = pair_cells(pair);
    cells.push_back(format_number(c.real()));
    cells.push_back(format_number(c.imag()));
    cells.push_back(format_number(std::abs(c)));
    cells.push_back(r ? std::to_string(*r) : "");
    report.csv_rows.push_back(std::move(cells));
  }
  report.payload = Json{{"bell", to_json(bell)},
                        {"tuples", tuples},
                        {"total_probability", snap(table.total_probability())}};
  report.csv_metadata.push_back("bell=" + bell_label(bell));
  report.csv_header = {"k", "m", "k'", "m'", "re", "im", "magnitude", "phase_r"};

  structure_checks(report, {table}, d);
  const double f = fidelity(reconstruct(table), hyperentangled_state(bell, config.convention));
  report.check("reconstruction", std::abs(f - 1.0) <= kLogicalTolerance,
               "fidelity of the expansion with the input = " + format_number(f));
  return report;
}

Report cmd_verify(const RunConfig& config) {
  const int d = config.d;
  Report report{"verify", config, {}, {}, {}, {}, {}};

  Json conventions = Json::array();
  for (const auto& conv : PhaseConvention::all()) {
    Json entry{{"convention", to_json(conv)}};
    try {
      entry["law"] = law_json(fit_index_law(decompose_all(d, conv)));
    } catch (const NoAffineLaw& e) {
      entry["law"] = nullptr;
      entry["error"] = e.what();
    }
    conventions.push_back(std::move(entry));
  }
  report.payload["conventions"] = conventions;
  report.payload["general_law"] = law_json(general_index_law(d));

  if (d >= 3) {
    const ConventionSearch search = find_convention(d);
    Json matching = Json::array();
    for (const auto& conv : search.matching) matching.push_back(conv.to_string());
    report.payload["search"] = Json{{"matching", matching},
                                    {"selected", search.convention.to_string()},
                                    {"law", law_json(search.law)}};
    report.check("matching_convention_exists", !search.matching.empty(),
                 std::to_string(search.matching.size()) + " convention(s) give s = t = d - 1");
  } else {
    report.payload["search"] = nullptr;
  }

  const auto tables = decompose_all(d, config.convention);
  structure_checks(report, tables, d);

  const IndexLaw law = fit_index_law(tables);
  report.payload["law"] = law_json(law);
  report.csv_metadata.push_back("law=" + law.to_string());
  if (d == 2) {
    report.check("qubit_law", law.s == 1 && law.t == 1 && law.m_law_holds,
                 "fitted " + law.to_string());
  }

  const PhaseLaw phases = fit_phase_law(tables);
  if (phases.closed_form) {
    const auto& cf = *phases.closed_form;
    report.payload["phase_law"] = Json{{"u", cf.u}, {"v", cf.v}, {"w", cf.w},
                                       {"text", "r = (" + std::to_string(cf.u) + "k' + " +
                                                    std::to_string(cf.v) + "i + " +
                                                    std::to_string(cf.w) + ") * j mod " +
                                                    std::to_string(d)}};
  } else {
    report.payload["phase_law"] = nullptr;
  }
  report.check("phase_law_closed_form", phases.closed_form.has_value(),
               "phases fit an affine closed form in (k', i) times j");

  const DecodingTable decoding = build_decoding_table(d, config.convention);
  report.check("decoding_partition", decoding.is_partition(),
               "d^4 outcome pairs split into d^2 classes of d^2");

  report.csv_header = {"convention", "source", "i", "j", "kind", "k", "m", "k'", "m'", "computed_k'",
                       "computed_m'"};
  if (d == 3 || d == 4) {
    Json audits = Json::object();
    const auto used = audit_paper_tables(d, config.convention);
    Json used_json = Json::array();
    for (const auto& r : used) used_json.push_back(discrepancy_json(r));
    audits["convention"] = Json{{"convention", config.convention.to_string()},
                                {"findings", finding_count(used)},
                                {"reports", used_json}};
    discrepancy_rows(report, config.convention, used);
    report.csv_metadata.push_back("findings " + config.convention.to_string() + "=" +
                                  std::to_string(finding_count(used)));
    if (!(config.convention == PhaseConvention::literal())) {
      const auto literal = audit_paper_tables(d, PhaseConvention::literal());
      Json literal_json = Json::array();
      for (const auto& r : literal) literal_json.push_back(discrepancy_json(r));
      audits["literal"] = Json{{"convention", PhaseConvention::literal().to_string()},
                               {"findings", finding_count(literal)},
                               {"reports", literal_json}};
      discrepancy_rows(report, PhaseConvention::literal(), literal);
      report.csv_metadata.push_back("findings " + PhaseConvention::literal().to_string() + "=" +
                                    std::to_string(finding_count(literal)));
    }
    report.payload["audits"] = audits;
  } else {
    report.payload["audits"] = nullptr;
  }
  return report;
}

Report cmd_simulate(const RunConfig& config, int i, int j) {
  const int d = config.d;
  const BellIndex bell = checked_bell(d, i, j);
  const ExperimentResult result = run_experiment(d, i, j, config.shots, config.seed, config.convention);
  const CoincidenceTable abstract = coincidence_probabilities(result.prepared, config.convention);
  const DecodingTable decoding = build_decoding_table(d, config.convention);

  double deviation = 0.0;
  for (std::size_t f = 0; f < abstract.probabilities.size(); ++f) {
    deviation = std::max(deviation, std::abs(abstract.probabilities[f] - result.probabilities.probabilities[f]));
  }

  Report report{"simulate", config, {}, {}, {}, {}, {}};
  Json theory = Json::array();
  Json counts = Json::array();
  for (const auto& pair : all_outcome_pairs(d)) {
    const double p = result.probabilities.at(pair);
    const std::uint64_t n = result.shots ? result.shots->count(pair) : 0;
    if (p > kLogicalTolerance) {
      Json entry = to_json(pair);
      entry["probability"] = snap(p);
      theory.push_back(std::move(entry));
    }
    if (n > 0) {
      Json entry = to_json(pair);
      entry["count"] = n;
      counts.push_back(std::move(entry));
    }
    if (p > kLogicalTolerance || n > 0) {
      auto cells = pair_cells(pair);
      cells.push_back(format_number(p));
      if (result.shots) cells.push_back(std::to_string(n));
      report.csv_rows.push_back(std::move(cells));
    }
  }
  report.csv_header = {"k", "m", "k'", "m'", "probability"};
  if (result.shots) report.csv_header.push_back("count");

  const Classification theory_class = classify(result.probabilities, decoding);
  report.payload = Json{{"bell", to_json(bell)},
                        {"theory", theory},
                        {"classification", classification_json(theory_class, d)},
                        {"equivalence", {{"max_deviation", snap(deviation)}}}};
  report.csv_metadata.push_back("bell=" + bell_label(bell));
  report.csv_metadata.push_back("classified=" + bell_label(theory_class.best) +
                                " confidence=" + format_number(theory_class.confidence));
  report.check("pipeline_equivalence", deviation <= kLogicalTolerance,
               "max |optics - abstract| = " + format_number(deviation));
  report.check("theory_classification", theory_class.best == bell && !theory_class.tie,
               "argmax " + bell_label(theory_class.best));

  if (result.shots) {
    CoincidenceTable empirical{d, std::vector<double>(result.shots->counts.size())};
    bool in_class = true;
    for (const auto& pair : all_outcome_pairs(d)) {
      const auto n = result.shots->count(pair);
      empirical.probabilities[pair.flat()] =
          static_cast<double>(n) / static_cast<double>(result.shots->shots);
      if (n > 0 && decoding.lookup(pair) != bell) in_class = false;
    }
    const Classification sampled = classify(empirical, decoding);
    report.payload["sampled"] = Json{{"seed", result.shots->seed},
                                     {"shots", result.shots->shots},
                                     {"counts", counts},
                                     {"classification", classification_json(sampled, d)}};
    report.csv_metadata.push_back("sampled_classified=" + bell_label(sampled.best));
    report.check("sampled_outcomes_in_class", in_class,
                 "every recorded outcome decodes to " + bell_label(bell));
  } else {
    report.payload["sampled"] = nullptr;
  }
  return report;
}

ClassifyInput parse_state_file(std::istream& in) {
  static const std::regex header(R"(d\s*=\s*(\d+)(\s+probabilities)?)");
  std::string line;
  int line_number = 0;
  int d = 0;
  bool probabilities = false;
  std::vector<Complex> amplitudes;
  std::vector<double> weights;

  auto fail = [&](const std::string& what) {
    throw UsageError("state file line " + std::to_string(line_number) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);

    if (d == 0) {
      std::smatch match;
      if (!std::regex_match(line, match, header)) fail("expected header 'd=<n>' or 'd=<n> probabilities'");
      d = std::stoi(match[1].str());
      if (d < 2 || d > kMaxDimension) fail("dimension must lie in 2.." + std::to_string(kMaxDimension));
      probabilities = match[2].matched;
      continue;
    }

    std::istringstream fields(line);
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (probabilities) {
      if (!(fields >> re) || (fields >> extra)) fail("expected one probability");
      if (!std::isfinite(re) || re < 0.0) fail("probability must be finite and non-negative");
      weights.push_back(re);
    } else {
      if (!(fields >> re >> im) || (fields >> extra)) fail("expected 're im'");
      if (!std::isfinite(re) || !std::isfinite(im)) fail("amplitude must be finite");
      amplitudes.emplace_back(re, im);
    }
  }
  if (d == 0) throw UsageError("state file is empty");

  const std::size_t expected = static_cast<std::size_t>(d) * d * d * d;
  const std::size_t got = probabilities ? weights.size() : amplitudes.size();
  if (got != expected) {
    throw UsageError("state file holds " + std::to_string(got) + " entries, expected d^4 = " +
                     std::to_string(expected));
  }

  if (probabilities) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
      throw UsageError("probabilities sum to " + format_number(total) + ", deficit " +
                       format_number(1.0 - total) + " exceeds tolerance 1e-6");
    }
    return CoincidenceTable{d, std::move(weights)};
  }
  StateVector state(BasisShape({d, d, d, d}), std::move(amplitudes));
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > kNormalizationTolerance) {
    throw UsageError("state norm is " + format_number(norm) + ", deficit " + format_number(1.0 - norm) +
                     " exceeds tolerance 1e-6");
  }
  return state;
}

Report cmd_classify(const RunConfig& config, const ClassifyInput& input) {
  const int d = config.d;
  const DecodingTable decoding = build_decoding_table(d, config.convention);
  const bool is_state = std::holds_alternative<StateVector>(input);
  const CoincidenceTable table = is_state
                                     ? coincidence_probabilities(std::get<StateVector>(input), config.convention)
                                     : std::get<CoincidenceTable>(input);
  const Classification result = classify(table, decoding);

  Report report{"classify", config, {}, {}, {}, {}, {}};
  report.payload = classification_json(result, d);
  report.payload["input"] = is_state ? "amplitudes" : "probabilities";
  report.check("input_normalized", true, "input total within 1e-6 of 1");

  report.csv_metadata.push_back(std::string("input=") + (is_state ? "amplitudes" : "probabilities"));
  report.csv_metadata.push_back("best=" + bell_label(result.best) + " confidence=" +
                                format_number(result.confidence) + " tie=" + (result.tie ? "true" : "false"));
  report.csv_header = {"i", "j", "mass"};
  const auto indices = all_bell_indices(d);
  for (std::size_t n = 0; n < indices.size(); ++n) {
    report.csv_rows.push_back({std::to_string(indices[n].i), std::to_string(indices[n].j),
                               format_number(result.class_mass[n])});
  }
  return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and verification toolkit for high-dimensional Bell state measurement", "hdbsm"};
  app.set_version_flag("--version", HDBSM_VERSION);
  app.require_subcommand(1);

  struct {
    int d = 0;
    std::string convention;
    std::uint64_t seed = 1;
    std::uint64_t shots = 10000;
    std::string format = "json";
    std::string output;
    int i = 0;
    int j = 0;
    std::string state_file;
  } o;

  auto add_common = [&o](CLI::App* sub, bool need_d) {
    auto* dim = sub->add_option("-d,--dimension", o.d, "Qudit dimension")
                    ->check(CLI::Range(2, kMaxDimension));
    if (need_d) dim->required();
    sub->add_option("--convention", o.convention, "auto, literal or bell,decomp signs such as -,+");
    sub->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
    sub->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("-o,--output", o.output,
                    std::string("Report path; defaults to $") + kOutputDirEnv + " or stdout");
  };
  auto add_index = [&o](CLI::App* sub) {
    sub->add_option("-i", o.i, "Bell index i")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("-j", o.j, "Bell index j")->required()->check(CLI::NonNegativeNumber);
  };

  auto* decompose_cmd = app.add_subcommand("decompose", "Expand psi_ij (x) phi over decomposition pairs");
  add_common(decompose_cmd, true);
  add_index(decompose_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Fit index and phase laws and audit the printed tables");
  add_common(verify_cmd, true);

  auto* simulate_cmd = app.add_subcommand("simulate", "Run the optical measurement pipeline");
  add_common(simulate_cmd, true);
  add_index(simulate_cmd);
  simulate_cmd->add_option("--shots", o.shots, "Number of sampled trials (0 for theory only)")
      ->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "Classify a state or probability file");
  add_common(classify_cmd, false);
  classify_cmd->add_option("state-file", o.state_file, "Input file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config;
    config.d = o.d;
    config.seed = o.seed;
    config.format = o.format == "csv" ? Format::csv : Format::json;
    config.output = o.output;

    Report report;
    std::optional<BellIndex> bell;
    if (decompose_cmd->parsed()) {
      resolve_convention(config, o.convention);
      bell = checked_bell(config.d, o.i, o.j);
      report = cmd_decompose(config, o.i, o.j);
    } else if (verify_cmd->parsed()) {
      resolve_convention(config, o.convention);
      report = cmd_verify(config);
    } else if (simulate_cmd->parsed()) {
      config.shots = o.shots;
      resolve_convention(config, o.convention);
      bell = checked_bell(config.d, o.i, o.j);
      report = cmd_simulate(config, o.i, o.j);
    } else {
      std::ifstream file(o.state_file);
      if (!file) throw UsageError("cannot read " + o.state_file);
      const ClassifyInput input = parse_state_file(file);
      const int file_d = std::holds_alternative<StateVector>(input)
                             ? std::get<StateVector>(input).shape().radix(0)
                             : std::get<CoincidenceTable>(input).d;
      if (config.d != 0 && config.d != file_d) {
        throw UsageError("-d " + std::to_string(config.d) + " disagrees with file header d=" +
                         std::to_string(file_d));
      }
      config.d = file_d;
      resolve_convention(config, o.convention);
      report = cmd_classify(config, input);
    }
    emit(report, bell, out, err);
    return report.passed() ? kExitOk : kExitCheckFailed;
  } catch (const UsageError& e) {
    err << "hdbsm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "hdbsm: " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

}  // namespace hdbsm::cli
