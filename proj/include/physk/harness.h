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

#ifndef PHYSK_HARNESS_H_
#define PHYSK_HARNESS_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "physk/corpus.h"
#include "physk/prover.h"
#include "physk/rational.h"

namespace physk {

/// The deterministic auto-prover; one attempt per entry.
struct BuiltinProver {
  ProverConfig config;
};

/// A command run through `/bin/sh -c`, once per attempt.
///
/// The child reads one JSON line on stdin,
///   {"id": NAME, "statement": TEXT, "k": ATTEMPT}
/// and answers with one JSON line on stdout,
///   {"id": NAME, "script": SCRIPT}.
/// The script is checked with check_derivation; whatever else the child
/// prints is ignored. A child still running after `timeout_seconds` is
/// killed with its process group.
struct ExternalProver {
  std::string command;
  double timeout_seconds = 60;
  std::size_t k = 16;
  ProverConfig config;
};

using ProverBinding = std::variant<BuiltinProver, ExternalProver>;

struct AttemptRecord {
  std::string entry;
  std::size_t attempt = 0;
  std::string script;  // trace (builtin) or submitted script (external)
  VerdictKind verdict = VerdictKind::kUnknown;
  /// Empty, or "<ErrorCode>: detail" for crashes, timeouts and malformed
  /// scripts. Such attempts count as failed.
  std::string error;
  double wall_seconds = 0;
};

struct PassCount {
  std::size_t passes = 0;
  std::size_t total = 0;

  /// passes / total, 0 when total is 0.
  BigRational rate() const;
  friend bool operator==(const PassCount&, const PassCount&) = default;
};

/// Pooled counts: Σ passes over Σ totals.
PassCount aggregate(const std::vector<PassCount>& parts);

/// Percentage rounded half-up to two decimals: 29/200 -> "14.50%".
std::string format_percent(const BigRational& fraction);

struct EntryOutcome {
  std::string name;
  Level level = Level::kCollege;
  Topic topic = Topic::kMechanics;
  Tier expected = Tier::kDimCheckOnly;
  bool passed = false;
  std::size_t attempts = 0;
  VerdictKind best = VerdictKind::kUnknown;  // proved > refuted > unknown
};

struct EvalReport {
  std::map<Level, PassCount> levels;  // every level, maybe empty
  std::map<Topic, PassCount> topics;  // every corpus topic, maybe empty
  PassCount overall;
  std::vector<EntryOutcome> entries;  // sorted by name

  // Configuration echo.
  std::string prover;  // "builtin" or the external command
  std::size_t k = 1;
  std::map<std::string, std::string> constants;  // base overrides
  std::string relative_tolerance;
};

struct EvalOptions {
  std::size_t workers = 4;
};

struct EvalResult {
  EvalReport report;
  std::vector<AttemptRecord> attempts;  // sorted by (entry, attempt)
};

/// Runs every entry through the binding on a bounded worker pool. Only
/// checker verdicts count: an entry passes when one of its attempts is
/// Proved. External crashes become failed attempts.
EvalResult run_eval(const std::vector<CorpusEntry>& corpus,
                    const ProverBinding& binding,
                    const EvalOptions& options = {});

/// Report over the first `k` attempts of each entry in `attempts`.
EvalReport report_from_attempts(const std::vector<CorpusEntry>& corpus,
                                const std::vector<AttemptRecord>& attempts,
                                std::size_t k);

/// Table with columns College | Comp-Easy | Comp-Hard | Overall, then a
/// per-topic table and one line per entry. Empty totals show "0/0".
std::string render_report(const EvalReport& report);

/// Machine-readable report; fixed key order, no timings.
std::string report_json(const EvalReport& report);

/// One JSON object per line:
///   {"entry","attempt","verdict","error","script","wall_ms"}
std::string attempt_log_jsonl(const std::vector<AttemptRecord>& attempts);

// ---- published results ------------------------------------------------------

/// Pass rates of one model with or without the unit library in context.
struct ModelRow {
  std::string model;
  std::map<Level, BigRational> levels;  // fractions, e.g. 9/104
  BigRational overall;
};

struct ResultsTable {
  std::map<Level, std::size_t> level_totals;
  std::vector<ModelRow> with_library;
  std::vector<ModelRow> without_library;
};

/// Reads the JSON form of a published results table. Percent cells are
/// exact decimals ("8.65%"); each is mapped to the pass count whose rate
/// renders to it. Throws kValidation when no such count exists.
ResultsTable load_results_table(const std::filesystem::path& path);

/// Exchanges the overall cells of `model` between the two modes.
ResultsTable swap_overall(ResultsTable table, const std::string& model);

struct DeltaReport {
  std::vector<std::pair<std::string, BigRational>> deltas;  // points
  BigRational mean;                                          // points
};

/// Overall(with) minus overall(without), in percentage points, per model in
/// the order of `with`, plus their mean. Throws kValidation when the model
/// sets differ.
DeltaReport improvement_delta(const std::vector<ModelRow>& with,
                              const std::vector<ModelRow>& without);

/// "32.50", "-4.50", "10.625": exact decimal when it terminates within
/// `max_digits`, else rounded half-up. No sign for positive values.
std::string format_points(const BigRational& points, int min_digits = 2,
                          int max_digits = 6);

}  // namespace physk

#endif  // PHYSK_HARNESS_H_
