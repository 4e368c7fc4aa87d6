// Copyright 2026 The physk Authors
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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"
#include "physk/error.h"
#include "physk/harness.h"
#include "test_support.h"

namespace physk {
namespace {

namespace fs = std::filesystem;
using testing::corpus_dir;
using testing::read_file;
using testing::source_dir;

const std::vector<CorpusEntry>& golden() {
  static const auto* corpus = new std::vector<CorpusEntry>(
      load_corpus(corpus_dir()));
  return *corpus;
}

std::string mock(const std::string& args) {
  return std::string(PHYSK_MOCK_PROVER) + " " + args;
}

ExternalProver external(const std::string& args, std::size_t k,
                        double timeout = 20) {
  ExternalProver p;
  p.command = mock(args);
  p.k = k;
  p.timeout_seconds = timeout;
  return p;
}

// Stores the builtin traces as <name>.script files.
class TraceDir {
 public:
  TraceDir() {
    path_ = fs::temp_directory_path() /
            ("physk_traces_" + std::to_string(::getpid()));
    fs::create_directories(path_);
    for (const auto& a : run_eval(golden(), BuiltinProver{}).attempts) {
      std::ofstream(path_ / (a.entry + ".script")) << a.script;
    }
  }
  ~TraceDir() { fs::remove_all(path_); }
  std::string arg() const { return "--traces " + path_.string(); }

 private:
  fs::path path_;
};

const TraceDir& traces() {
  static const TraceDir* dir = new TraceDir();
  return *dir;
}

std::size_t proved_tier_count() {
  std::size_t n = 0;
  for (const auto& e : golden()) n += e.expected == Tier::kProvableByAuto;
  return n;
}

// Every pass is backed by a Proved record without error; nothing else counts.
void expect_verifier_authority(const EvalResult& r) {
  std::set<std::string> proved;
  for (const auto& a : r.attempts) {
    if (a.error.empty() && a.verdict == VerdictKind::kProved) {
      proved.insert(a.entry);
    }
  }
  std::size_t passes = 0;
  for (const auto& e : r.report.entries) {
    EXPECT_EQ(e.passed, proved.count(e.name) > 0) << e.name;
    passes += e.passed;
  }
  EXPECT_EQ(r.report.overall.passes, passes);
  EXPECT_EQ(proved.size(), passes);
}

void expect_pooling(const EvalReport& r) {
  std::size_t passes = 0;
  std::size_t total = 0;
  for (const auto& [l, c] : r.levels) {
    passes += c.passes;
    total += c.total;
  }
  EXPECT_EQ(r.overall.passes, passes);
  EXPECT_EQ(r.overall.total, total);
  std::size_t topic_passes = 0;
  for (const auto& [t, c] : r.topics) topic_passes += c.passes;
  EXPECT_EQ(topic_passes, passes);
}

// ---- aggregation and rendering -----------------------------------------------

TEST(Aggregate, DeepSeekProverRow) {
  std::vector<PassCount> levels = {{9, 104}, {18, 62}, {2, 34}};
  PassCount overall = aggregate(levels);
  EXPECT_EQ(overall, (PassCount{29, 200}));
  EXPECT_EQ(overall.rate(), BigRational(29, 200));
  EXPECT_EQ(format_percent(overall.rate()), "14.50%");
  EXPECT_EQ(format_percent(levels[0].rate()), "8.65%");
  EXPECT_EQ(format_percent(levels[1].rate()), "29.03%");
  EXPECT_EQ(format_percent(levels[2].rate()), "5.88%");
}

TEST(Aggregate, GeminiRow) {
  PassCount overall = aggregate({{33, 104}, {46, 62}, {0, 34}});
  EXPECT_EQ(overall, (PassCount{79, 200}));
  EXPECT_EQ(format_percent(overall.rate()), "39.50%");
}

TEST(Aggregate, PooledNotAveraged) {
  PassCount overall = aggregate({{1, 2}, {0, 8}});
  EXPECT_EQ(overall.rate(), BigRational(1, 10));
}

TEST(Aggregate, Zeros) {
  EXPECT_EQ(format_percent(aggregate({{0, 5}, {0, 7}}).rate()), "0.00%");
  EXPECT_EQ(format_percent(aggregate({}).rate()), "0.00%");
}

TEST(FormatPercent, HalfUp) {
  EXPECT_EQ(format_percent(BigRational(1, 8)), "12.50%");
  EXPECT_EQ(format_percent(BigRational(1, 3)), "33.33%");
  EXPECT_EQ(format_percent(BigRational(2, 3)), "66.67%");
  EXPECT_EQ(format_percent(BigRational(1, 800)), "0.13%");  // 0.125 -> up
  EXPECT_EQ(format_percent(BigRational(1)), "100.00%");
}

EvalReport table_row_report(std::vector<PassCount> levels) {
  EvalReport r;
  r.levels = {{Level::kCollege, levels[0]},
              {Level::kCompEasy, levels[1]},
              {Level::kCompHard, levels[2]}};
  r.overall = aggregate(levels);
  r.prover = "test";
  return r;
}

TEST(RenderReport, DeepSeekRowLayout) {
  std::string text = render_report(table_row_report({{9, 104}, {18, 62}, {2, 34}}));
  EXPECT_NE(text.find("levels: College | Comp-Easy | Comp-Hard | Overall\n"),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("8.65% | 29.03% | 5.88% | 14.50%\n"), std::string::npos)
      << text;
}

TEST(RenderReport, EmptyCorpusFlagsZeroTotals) {
  EvalResult r = run_eval({}, BuiltinProver{});
  EXPECT_EQ(r.report.overall, (PassCount{0, 0}));
  std::string text = render_report(r.report);
  EXPECT_NE(text.find("passes: 0/0 (empty) | 0/0 (empty) | 0/0 (empty) | "
                      "0/0 (empty)"),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("rates:  0.00% | 0.00% | 0.00% | 0.00%"),
            std::string::npos);
  auto j = nlohmann::json::parse(report_json(r.report));
  EXPECT_EQ(j["overall"]["total"], 0);
}

// ---- published results ---------------------------------------------------------

// Hundredths of a percent, straight from the cell text.
long long basis_points(const std::string& cell) {
  std::string digits;
  for (char c : cell) {
    if (c != '.' && c != '%') digits += c;
  }
  return std::stoll(digits);
}

fs::path table_path() { return source_dir() / "data" / "table1.json"; }

TEST(ResultsTable, CellsMapToCounts) {
  ResultsTable t = load_results_table(table_path());
  EXPECT_EQ(t.level_totals.at(Level::kCollege), 104u);
  EXPECT_EQ(t.level_totals.at(Level::kCompEasy), 62u);
  EXPECT_EQ(t.level_totals.at(Level::kCompHard), 34u);
  ASSERT_EQ(t.with_library.size(), 8u);
  const ModelRow& dsp = t.with_library[4];
  EXPECT_EQ(dsp.model, "DeepSeek-Prover-V2-7B");
  EXPECT_EQ(dsp.levels.at(Level::kCollege), BigRational(9, 104));
  EXPECT_EQ(dsp.levels.at(Level::kCompEasy), BigRational(18, 62));
  EXPECT_EQ(dsp.levels.at(Level::kCompHard), BigRational(2, 34));
  EXPECT_EQ(dsp.overall, BigRational(29, 200));
  const ModelRow& gemini = t.with_library[7];
  EXPECT_EQ(gemini.levels.at(Level::kCollege), BigRational(33, 104));
  EXPECT_EQ(gemini.levels.at(Level::kCompEasy), BigRational(46, 62));
  EXPECT_EQ(gemini.overall, BigRational(79, 200));
}

// Pooling the per-level counts reproduces the printed overall for six
// models. Qwen3-8B's two overall cells fit each other's rows; Goedel's are
// half a point off in both modes and no swap fixes them.
TEST(ResultsTable, PooledLevelsAgainstPrintedOverall) {
  ResultsTable t = load_results_table(table_path());
  auto pooled = [&](const ModelRow& row) {
    BigRational passes(0);
    for (const auto& [level, f] : row.levels) {
      passes += f * static_cast<long long>(t.level_totals.at(level));
    }
    return BigRational(passes / 200);
  };
  auto inconsistent = [&](const ResultsTable& table) {
    std::set<std::string> out;
    for (const auto* rows : {&table.with_library, &table.without_library}) {
      for (const auto& row : *rows) {
        if (pooled(row) != row.overall) out.insert(row.model);
      }
    }
    return out;
  };
  EXPECT_EQ(inconsistent(t),
            (std::set<std::string>{"Goedel-Prover-V2-8B", "Qwen3-8B"}));
  EXPECT_EQ(inconsistent(swap_overall(t, "Qwen3-8B")),
            (std::set<std::string>{"Goedel-Prover-V2-8B"}));
  const ModelRow& goedel = t.with_library[3];
  EXPECT_EQ(pooled(goedel), BigRational(25, 200));
  EXPECT_EQ(goedel.overall, BigRational(26, 200));
  EXPECT_EQ(pooled(t.without_library[3]), BigRational(21, 200));
  EXPECT_EQ(t.without_library[3].overall, BigRational(20, 200));
}

TEST(ImprovementDelta, ClaudeRow) {
  ResultsTable t = load_results_table(table_path());
  DeltaReport d = improvement_delta(t.with_library, t.without_library);
  ASSERT_EQ(d.deltas.size(), 8u);
  EXPECT_EQ(d.deltas[6].first, "Claude-Sonnet-4");
  EXPECT_EQ(d.deltas[6].second, BigRational(65, 2));
  EXPECT_EQ(format_points(d.deltas[6].second), "32.50");
}

TEST(ImprovementDelta, BothReadingsAgainstIndependentRecomputation) {
  // Oracle: integer arithmetic on the printed cells.
  auto j = nlohmann::json::parse(read_file(table_path()));
  long long printed = 0;
  long long swapped = 0;
  for (const auto& m : j["models"]) {
    long long w = basis_points(m["with"]["overall"]);
    long long wo = basis_points(m["without"]["overall"]);
    printed += w - wo;
    swapped += m["model"] == "Qwen3-8B" ? wo - w : w - wo;
  }
  BigRational printed_mean(printed, 800);  // basis points / 100 / 8 models
  BigRational swapped_mean(swapped, 800);
  EXPECT_EQ(printed_mean, BigRational(85, 8));
  EXPECT_EQ(swapped_mean, BigRational(47, 4));

  ResultsTable t = load_results_table(table_path());
  DeltaReport as_printed = improvement_delta(t.with_library, t.without_library);
  EXPECT_EQ(as_printed.mean, printed_mean);
  EXPECT_EQ(format_points(as_printed.mean), "10.625");
  ResultsTable s = swap_overall(t, "Qwen3-8B");
  DeltaReport as_swapped = improvement_delta(s.with_library, s.without_library);
  EXPECT_EQ(as_swapped.mean, swapped_mean);
  EXPECT_EQ(format_points(as_swapped.mean), "11.75");
}

TEST(ImprovementDelta, IdenticalReportsGiveZero) {
  ResultsTable t = load_results_table(table_path());
  DeltaReport d = improvement_delta(t.with_library, t.with_library);
  for (const auto& [model, points] : d.deltas) EXPECT_EQ(points, 0) << model;
  EXPECT_EQ(d.mean, 0);
}

TEST(ImprovementDelta, MismatchedModels) {
  ResultsTable t = load_results_table(table_path());
  auto fewer = t.without_library;
  fewer.pop_back();
  EXPECT_THROW(improvement_delta(t.with_library, fewer), Error);
  auto renamed = t.without_library;
  renamed[0].model = "Other";
  try {
    improvement_delta(t.with_library, renamed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
  }
  EXPECT_THROW(swap_overall(t, "Other"), Error);
}

TEST(FormatPoints, Digits) {
  EXPECT_EQ(format_points(BigRational(-9, 2)), "-4.50");
  EXPECT_EQ(format_points(BigRational(0)), "0.00");
  EXPECT_EQ(format_points(BigRational(1, 3)), "0.333333");
}

// ---- evaluation runs -----------------------------------------------------------

TEST(RunEval, BuiltinPassesExactlyTheAutoTier) {
  EvalResult r = run_eval(golden(), BuiltinProver{});
  ASSERT_EQ(r.attempts.size(), golden().size());
  for (const auto& e : r.report.entries) {
    EXPECT_EQ(e.passed, e.expected == Tier::kProvableByAuto) << e.name;
    EXPECT_EQ(e.attempts, 1u);
  }
  EXPECT_EQ(r.report.overall.passes, proved_tier_count());
  expect_pooling(r.report);
  expect_verifier_authority(r);
}

TEST(RunEval, BuiltinMatchesSnapshot) {
  EvalResult r = run_eval(golden(), BuiltinProver{});
  fs::path snap = source_dir() / "tests" / "snapshots";
  EXPECT_EQ(report_json(r.report),
            read_file(snap / "golden_builtin_report.json"));
  EXPECT_EQ(render_report(r.report),
            read_file(snap / "golden_builtin_report.txt"));
}

TEST(RunEval, BuiltinIsByteReproducible) {
  std::string a = report_json(run_eval(golden(), BuiltinProver{}, {1}).report);
  std::string b = report_json(run_eval(golden(), BuiltinProver{}, {8}).report);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("wall"), std::string::npos);
}

TEST(RunEval, ConstantEcho) {
  BuiltinProver b;
  b.config.constants.override_value("K", NumericValue(BigRational(1)));
  auto j = nlohmann::json::parse(report_json(run_eval({}, b).report));
  EXPECT_EQ(j["config"]["constants"]["K"], "1");
  EXPECT_EQ(j["config"]["relative_tolerance"], "1e-30");
}

TEST(RunEval, ReportKeyOrderIsFixed) {
  auto j = nlohmann::ordered_json::parse(
      report_json(run_eval(golden(), BuiltinProver{}).report));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"config", "levels", "topics",
                                            "overall", "entries"}));
  std::vector<std::string> levels;
  for (const auto& [k, v] : j["levels"].items()) levels.push_back(k);
  EXPECT_EQ(levels,
            (std::vector<std::string>{"college", "comp-easy", "comp-hard"}));
}

TEST(RunEval, ExternalEmptyScriptsPassNothing) {
  EvalResult r = run_eval(golden(), external("empty", 3));
  EXPECT_EQ(r.report.overall.passes, 0u);
  EXPECT_EQ(r.report.k, 3u);
  EXPECT_EQ(r.attempts.size(), 3 * golden().size());
  for (const auto& a : r.attempts) {
    EXPECT_TRUE(a.error.empty()) << a.error;
    EXPECT_EQ(a.verdict, VerdictKind::kUnknown);
  }
  expect_verifier_authority(r);
}

TEST(RunEval, ExternalReplayEqualsBuiltin) {
  EvalResult builtin = run_eval(golden(), BuiltinProver{});
  EvalResult replay = run_eval(golden(), external("replay " + traces().arg(), 4));
  ASSERT_EQ(builtin.report.entries.size(), replay.report.entries.size());
  for (std::size_t i = 0; i < builtin.report.entries.size(); ++i) {
    EXPECT_EQ(builtin.report.entries[i].passed, replay.report.entries[i].passed)
        << builtin.report.entries[i].name;
  }
  EXPECT_EQ(builtin.report.levels, replay.report.levels);
  EXPECT_EQ(builtin.report.overall, replay.report.overall);
  // A verified attempt ends the entry.
  for (const auto& e : replay.report.entries) {
    EXPECT_EQ(e.attempts, e.passed ? 1u : 4u) << e.name;
  }
  expect_verifier_authority(replay);
}

TEST(RunEval, CrashesAreFailedAttempts) {
  for (const char* mode : {"crash", "garbage"}) {
    EvalResult r = run_eval(golden(), external(mode, 2));
    EXPECT_EQ(r.report.overall.passes, 0u) << mode;
    EXPECT_EQ(r.attempts.size(), 2 * golden().size());
    for (const auto& a : r.attempts) {
      EXPECT_EQ(a.error.rfind("ExternalProverCrash: ", 0), 0u) << a.error;
    }
  }
}

TEST(RunEval, TimeoutKillsOnlyTheAttempt) {
  std::vector<CorpusEntry> two(golden().begin(), golden().begin() + 2);
  auto start = std::chrono::steady_clock::now();
  EvalResult r = run_eval(two, external("hang", 2, 0.3));
  auto elapsed = std::chrono::steady_clock::now() - start;
  ASSERT_EQ(r.attempts.size(), 4u);
  for (const auto& a : r.attempts) {
    EXPECT_NE(a.error.find("timed out"), std::string::npos) << a.error;
  }
  EXPECT_LT(elapsed, std::chrono::seconds(5));
}

TEST(RunEval, ProverOutputIsNeverTrusted) {
  // Scripts that name missing hypotheses are rejected by the checker.
  fs::path dir = fs::temp_directory_path() /
                 ("physk_bad_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  for (const auto& e : golden()) {
    std::ofstream(dir / (e.name() + ".script")) << "subst no_such_hyp\n";
  }
  EvalResult r = run_eval(golden(),
                          external("replay --traces " + dir.string(), 2));
  fs::remove_all(dir);
  EXPECT_EQ(r.report.overall.passes, 0u);
  for (const auto& a : r.attempts) {
    EXPECT_EQ(a.error.rfind("MalformedScript: ", 0), 0u) << a.error;
  }
}

TEST(RunEvalProperty, PassAtKIsMonotone) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    EvalResult r = run_eval(
        golden(), external("replay " + traces().arg() + " --fraction 0.3 --seed " +
                               std::to_string(seed),
                           8));
    std::size_t previous = 0;
    for (std::size_t k = 1; k <= 8; ++k) {
      EvalReport at_k = report_from_attempts(golden(), r.attempts, k);
      EXPECT_GE(at_k.overall.passes, previous) << "k=" << k;
      previous = at_k.overall.passes;
      expect_pooling(at_k);
    }
    EXPECT_EQ(previous, r.report.overall.passes);
    EXPECT_LE(previous, proved_tier_count());
    for (const auto& e : r.report.entries) EXPECT_LE(e.attempts, 8u);
  }
}

TEST(RunEvalProperty, LateAnswersCountFromTheirAttempt) {
  EvalResult r = run_eval(golden(),
                          external("replay " + traces().arg() + " --from 3", 5));
  EXPECT_EQ(report_from_attempts(golden(), r.attempts, 3).overall.passes, 0u);
  EXPECT_EQ(report_from_attempts(golden(), r.attempts, 4).overall.passes,
            proved_tier_count());
}

TEST(AttemptLog, OneOrderedObjectPerLine) {
  EvalResult r = run_eval(golden(), BuiltinProver{});
  std::istringstream in(attempt_log_jsonl(r.attempts));
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::ordered_json::parse(line);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"entry", "attempt", "verdict",
                                              "error", "script", "wall_ms"}));
    EXPECT_EQ(j["entry"], r.attempts[n].entry);
    ++n;
  }
  EXPECT_EQ(n, r.attempts.size());
}

}  // namespace
}  // namespace physk
