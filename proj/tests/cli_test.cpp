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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hdbsm/paper_tables.hpp"

namespace hdbsm::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hdbsm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Invocation result;
  result.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

int run_binary(const std::string& args) {
  const std::string command = std::string(HDBSM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("hdbsm_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_amplitudes(const fs::path& p, const StateVector& state, int d, double scale = 1.0) {
  std::ofstream out(p);
  out << "d=" << d << "\n";
  char line[96];
  for (std::size_t n = 0; n < state.dimension(); ++n) {
    std::snprintf(line, sizeof(line), "%.17g %.17g\n", scale * state[n].real(), scale * state[n].imag());
    out << line;
  }
}

TEST(CliDecompose, QutritPsiZeroZero) {
  const auto r = invoke({"decompose", "-d", "3", "-i", "0", "-j", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.json();
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  EXPECT_EQ(doc["config"]["convention"]["source"], "auto");
  EXPECT_EQ(doc["config"]["convention"]["label"], "(-,+)");
  const auto& tuples = doc["payload"]["tuples"];
  ASSERT_EQ(tuples.size(), 9u);
  for (const auto& t : tuples) EXPECT_NEAR(t["magnitude"].get<double>(), 1.0 / 3.0, kLogicalTolerance);
  EXPECT_TRUE(doc["passed"].get<bool>());
}

TEST(CliDecompose, QubitLaw) {
  const auto r = invoke({"decompose", "-d", "2", "-i", "1", "-j", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.json();
  EXPECT_EQ(doc["config"]["convention"]["source"], "default");
  const auto& tuples = doc["payload"]["tuples"];
  ASSERT_EQ(tuples.size(), 4u);
  for (const auto& t : tuples) {
    const int k = t["k"];
    const int m = t["m"];
    EXPECT_EQ(t["k_prime"].get<int>(), (k + 1) % 2);
    EXPECT_EQ(t["m_prime"].get<int>(), (m + 1) % 2);
  }
}

TEST(CliDecompose, CsvLayout) {
  const auto r = invoke({"decompose", "-d", "3", "-i", "1", "-j", "2", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  int data_rows = 0;
  bool header_seen = false;
  while (std::getline(lines, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header_seen) {
      EXPECT_EQ(line, "k,m,k',m',re,im,magnitude,phase_r");
      header_seen = true;
    } else {
      ++data_rows;
    }
  }
  EXPECT_EQ(data_rows, 9);
}

TEST(CliDecompose, InvalidDimensionWritesNothing) {
  TempDir tmp;
  const auto target = tmp / "out.json";
  const auto r = invoke({"decompose", "-d", "9", "-i", "0", "-j", "0", "-o", target.string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_FALSE(fs::exists(target));
  EXPECT_EQ(run_binary("decompose -d 9 -i 0 -j 0 -o " + target.string()), kExitUsage);
  EXPECT_FALSE(fs::exists(target));
}

TEST(CliDecompose, IndexOutOfRange) {
  EXPECT_EQ(invoke({"decompose", "-d", "3", "-i", "3", "-j", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"decompose", "-d", "3", "-i", "-1", "-j", "0"}).code, kExitUsage);
}

TEST(CliConvention, AutoRejectedAtQubitDimension) {
  const auto r = invoke({"decompose", "-d", "2", "-i", "0", "-j", "0", "--convention", "auto"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("d=2"), std::string::npos);
}

TEST(CliConvention, ExplicitAndMalformed) {
  const auto r = invoke({"decompose", "-d", "3", "-i", "0", "-j", "1", "--convention", "+,-"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.json()["config"]["convention"]["source"], "explicit");
  EXPECT_EQ(r.json()["config"]["convention"]["decomp_sign"], -1);
  EXPECT_EQ(invoke({"verify", "-d", "3", "--convention", "plus"}).code, kExitUsage);
}

TEST(CliVerify, QutritReportsLawAndDuplicate) {
  const auto r = invoke({"verify", "-d", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.json();
  EXPECT_EQ(doc["payload"]["law"]["s"], 2);
  EXPECT_EQ(doc["payload"]["law"]["t"], 2);
  EXPECT_EQ(doc["payload"]["search"]["matching"].size(), 2u);
  bool duplicate = false;
  for (const auto& report : doc["payload"]["audits"]["literal"]["reports"]) {
    if (report["bell"]["i"] == 0 && report["bell"]["j"] == 1) {
      for (const auto& p : report["duplicates"]) {
        duplicate = duplicate || (p["k"] == 2 && p["m"] == 1 && p["k_prime"] == 0 && p["m_prime"] == 0);
      }
    }
  }
  EXPECT_TRUE(duplicate);
  // Three mismatches, the psi_01 duplicate and three unprinted tuples.
  EXPECT_EQ(doc["payload"]["audits"]["convention"]["findings"], 7);
  EXPECT_TRUE(doc["passed"].get<bool>());
}

TEST(CliVerify, LiteralFindingsAreNotFailures) {
  const auto r = invoke({"verify", "-d", "3", "--convention", "literal"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.json();
  EXPECT_EQ(doc["payload"]["law"]["s"], 2);
  EXPECT_EQ(doc["payload"]["law"]["t"], 1);
  EXPECT_FALSE(doc["payload"]["audits"].contains("literal"));
  EXPECT_GT(doc["payload"]["audits"]["convention"]["findings"].get<int>(), 50);
}

TEST(CliVerify, UnseenDimension) {
  const auto r = invoke({"verify", "-d", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.json();
  EXPECT_EQ(doc["payload"]["law"]["s"], 4);
  EXPECT_EQ(doc["payload"]["law"]["t"], 4);
  EXPECT_TRUE(doc["payload"]["law"]["m_law_holds"].get<bool>());
  EXPECT_TRUE(doc["payload"]["audits"].is_null());
}

TEST(CliVerify, QubitLawConfirmed) {
  const auto r = invoke({"verify", "-d", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.json();
  EXPECT_TRUE(doc["payload"]["search"].is_null());
  bool qubit_check = false;
  for (const auto& c : doc["checks"]) {
    if (c["name"] == "qubit_law") qubit_check = c["passed"].get<bool>();
  }
  EXPECT_TRUE(qubit_check);
}

TEST(CliSimulate, SeededRunClassifiesAndRepeats) {
  const std::vector<std::string> args = {"simulate", "-d", "3", "-i", "2", "-j", "1", "--shots", "9000",
                                         "--seed", "7"};
  const auto first = invoke(args);
  ASSERT_EQ(first.code, kExitOk) << first.err;
  const auto doc = first.json();
  EXPECT_EQ(doc["payload"]["classification"]["best"]["i"], 2);
  EXPECT_EQ(doc["payload"]["classification"]["best"]["j"], 1);
  EXPECT_EQ(doc["payload"]["sampled"]["classification"]["best"]["i"], 2);
  EXPECT_EQ(doc["payload"]["sampled"]["classification"]["best"]["j"], 1);
  EXPECT_EQ(doc["config"]["seed"], 7);
  EXPECT_EQ(invoke(args).out, first.out);
}

TEST(CliSimulate, ByteIdenticalFilesAcrossProcesses) {
  TempDir tmp;
  const auto a = tmp / "a.json";
  const auto b = tmp / "b.json";
  const std::string args = "simulate -d 3 -i 2 -j 1 --shots 9000 --seed 7 -o ";
  ASSERT_EQ(run_binary(args + a.string()), kExitOk);
  ASSERT_EQ(run_binary(args + b.string()), kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}

TEST(CliSimulate, TheoryOnly) {
  const auto r = invoke({"simulate", "-d", "3", "-i", "0", "-j", "0", "--shots", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.json();
  EXPECT_TRUE(doc["payload"]["sampled"].is_null());
  ASSERT_EQ(doc["payload"]["theory"].size(), 9u);
  for (const auto& e : doc["payload"]["theory"]) {
    EXPECT_NEAR(e["probability"].get<double>(), 1.0 / 9.0, kLogicalTolerance);
  }
}

TEST(CliSimulate, PsiTwoThreeMatchesListing) {
  const auto r = invoke({"simulate", "-d", "4", "-i", "2", "-j", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::set<OutcomePair> listed;
  for (const auto& t : psi23_d4()) listed.insert(t.pair);
  const auto doc = r.json();
  std::set<OutcomePair> support;
  for (const auto& e : doc["payload"]["theory"]) {
    support.insert(OutcomePair(4, e["k"], e["m"], e["k_prime"], e["m_prime"]));
  }
  EXPECT_EQ(support, listed);
}

TEST(CliSimulate, CsvColumns) {
  const auto sampled = invoke({"simulate", "-d", "2", "-i", "1", "-j", "0", "--shots", "100", "--format", "csv"});
  ASSERT_EQ(sampled.code, kExitOk);
  EXPECT_NE(sampled.out.find("\nk,m,k',m',probability,count\n"), std::string::npos);
  const auto theory = invoke({"simulate", "-d", "2", "-i", "1", "-j", "0", "--shots", "0", "--format", "csv"});
  EXPECT_NE(theory.out.find("\nk,m,k',m',probability\n"), std::string::npos);
}

TEST(CliClassify, BellStateFile) {
  TempDir tmp;
  const PhaseConvention conv(-1, 1);
  write_amplitudes(tmp / "psi11.txt", hyperentangled_state(BellIndex(3, 1, 1), conv), 3);
  const auto r = invoke({"classify", (tmp / "psi11.txt").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.json();
  EXPECT_EQ(doc["config"]["d"], 3);
  EXPECT_EQ(doc["payload"]["best"]["i"], 1);
  EXPECT_EQ(doc["payload"]["best"]["j"], 1);
  EXPECT_NEAR(doc["payload"]["confidence"].get<double>(), 1.0, kLogicalTolerance);
  EXPECT_FALSE(doc["payload"]["tie"].get<bool>());
}

TEST(CliClassify, MaximallyMixedTies) {
  TempDir tmp;
  {
    std::ofstream out(tmp / "mixed.txt");
    out << "# uniform over all outcomes\nd=3 probabilities\n";
    for (int n = 0; n < 81; ++n) out << "0.012345679012345678\n";
  }
  const auto r = invoke({"classify", (tmp / "mixed.txt").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = r.json();
  EXPECT_TRUE(doc["payload"]["tie"].get<bool>());
  EXPECT_EQ(doc["payload"]["tied"].size(), 9u);
  for (const auto& c : doc["payload"]["class_distribution"]) {
    EXPECT_NEAR(c["mass"].get<double>(), 1.0 / 9.0, kLogicalTolerance);
  }
}

TEST(CliClassify, UnnormalizedFileNamesDeficit) {
  TempDir tmp;
  write_amplitudes(tmp / "bad.txt", hyperentangled_state(BellIndex(3, 1, 1), PhaseConvention(-1, 1)), 3, 0.9);
  const auto r = invoke({"classify", (tmp / "bad.txt").string()});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("deficit"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run_binary("classify " + (tmp / "bad.txt").string()), kExitUsage);
}

TEST(CliClassify, ParseErrors) {
  TempDir tmp;
  {
    std::ofstream(tmp / "short.txt") << "d=2\n1 0\n";
    std::ofstream(tmp / "header.txt") << "dimension 2\n";
    std::ofstream(tmp / "junk.txt") << "d=2\n1 zero\n";
  }
  EXPECT_EQ(invoke({"classify", (tmp / "short.txt").string()}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", (tmp / "header.txt").string()}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", (tmp / "junk.txt").string()}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", (tmp / "absent.txt").string()}).code, kExitUsage);
}

TEST(CliClassify, DimensionFlagMustMatchFile) {
  TempDir tmp;
  write_amplitudes(tmp / "psi.txt", hyperentangled_state(BellIndex(2, 0, 1), PhaseConvention::literal()), 2);
  EXPECT_EQ(invoke({"classify", "-d", "3", (tmp / "psi.txt").string()}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", "-d", "2", (tmp / "psi.txt").string()}).code, kExitOk);
}

TEST(CliOutput, EnvironmentDirectory) {
  TempDir tmp;
  ::setenv(kOutputDirEnv, tmp.path().c_str(), 1);
  const auto r = invoke({"decompose", "-d", "3", "-i", "1", "-j", "0", "--format", "csv"});
  ::unsetenv(kOutputDirEnv);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(fs::exists(tmp / "decompose-d3-i1-j0.csv"));
}

TEST(CliUsage, HelpAndMissingSubcommand) {
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify"}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", "-d", "3", "-i", "0", "-j", "0", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run_binary("--help"), kExitOk);
  EXPECT_EQ(run_binary("frobnicate"), kExitUsage);
}

TEST(CliReport, FailedCheckFlipsPassed) {
  Report report;
  report.command = "verify";
  report.config.convention = PhaseConvention::literal();
  report.config.convention_source = "explicit";
  report.check("example", false, "forced");
  EXPECT_FALSE(report.passed());
  EXPECT_FALSE(document(report)["passed"].get<bool>());
  report.config.format = Format::csv;
  EXPECT_NE(render(report).find("# check example=fail"), std::string::npos);
}

TEST(CliReport, TinyValuesPrintAsZero) {
  EXPECT_EQ(snap(3e-17), 0.0);
  EXPECT_EQ(snap(-3e-17), 0.0);
  EXPECT_EQ(format_number(-1e-18), "0");
  EXPECT_EQ(format_number(0.5), "0.5");
}

}  // namespace
}  // namespace hdbsm::cli
