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

#ifndef PHYSK_PROVER_H_
#define PHYSK_PROVER_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "physk/ast.h"
#include "physk/dimcheck.h"
#include "physk/unitdb.h"

namespace physk {

enum class StepKind {
  kSplit,
  kIntro,
  kCaseSplit,
  kSubst,
  kInstantiate,
  kPolyMatch,
  kRingCheck,
  kNumericCheck,
  kExactHyp,
};

/// One script line. Expression arguments stay as text and are parsed
/// against the goal they apply to.
struct Step {
  StepKind kind = StepKind::kRingCheck;
  std::string target;  // hypothesis, or the CaseSplit variable
  std::string arg;     // Instantiate expression, CaseSplit values, PolyMatch var
  std::string as;      // Intro / Instantiate result name

  friend bool operator==(const Step&, const Step&) = default;
};

/// Line syntax:
///   split
///   intro [as NAME]
///   cases VAR {v1, v2, ...}
///   subst HYP
///   instantiate HYP (EXPR) [as NAME]
///   polymatch HYP VAR
///   ring
///   numeric
///   exact HYP
/// Blank lines and lines starting with `#` or `--` are ignored.
struct DerivationScript {
  std::vector<Step> steps;

  friend bool operator==(const DerivationScript&,
                         const DerivationScript&) = default;
};

std::string print_step(const Step& step);
std::string print_script(const DerivationScript& script);
/// Throws kMalformedScript with the offending line number.
DerivationScript parse_script(std::string_view text);

struct ProverConfig {
  bool demote_cyclic_definitions = true;
  NumericConfig numeric;
  /// Defaults before the statement's own front-matter overrides.
  ConstantTable constants = UnitDb::standard().constants();
};

enum class VerdictKind { kProved, kRefuted, kUnknown };
std::string_view verdict_name(VerdictKind kind);

struct SideCondition {
  std::string text;  // "m_1 + m_2 ≠ 0"
  bool discharged = false;  // follows from a positivity/nonzero hypothesis
};

struct Verdict {
  VerdictKind kind = VerdictKind::kUnknown;
  DerivationScript trace;  // steps applied successfully
  std::string residual;    // Unknown: first open goal
  std::optional<std::size_t> failed_step;
  std::string message;
  /// Refuted: variable bindings satisfying every hypothesis.
  std::vector<std::pair<std::string, std::string>> counterexample;
  std::vector<SideCondition> side_conditions;
  bool approx_decided = false;
  bool numeric_used = false;
  DimReport dims;
};

/// Deterministic pipeline: split, intro, cases; exact hypothesis; coefficient
/// matching of function equalities; definitions substituted in dependency
/// order; then numeric when the goal is closed, ring otherwise.
/// Throws kCyclicDefinitions only when demotion is disabled.
Verdict auto_prove(const Statement& s, const ProverConfig& config = {},
                   const UnitDb& db = UnitDb::standard());

/// Applies `script` under the same rules. Throws kMalformedScript when a
/// step names a missing hypothesis or no goal is left to act on.
Verdict check_derivation(const Statement& s, const DerivationScript& script,
                         const ProverConfig& config = {},
                         const UnitDb& db = UnitDb::standard());

}  // namespace physk

#endif  // PHYSK_PROVER_H_
