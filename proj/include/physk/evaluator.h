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

#ifndef PHYSK_EVALUATOR_H_
#define PHYSK_EVALUATOR_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "physk/ast.h"
#include "physk/quantity.h"
#include "physk/unitdb.h"

namespace physk {

/// `∀ param, f(param) = body`.
struct FunctionDef {
  std::string param;
  ExprPtr body;
};

struct EvalEnv {
  std::map<std::string, Quantity> values;
  std::map<std::string, FunctionDef> functions;
  ConstantTable constants = UnitDb::standard().constants();
  const UnitDb* db = &UnitDb::standard();
  NumericConfig numeric;
};

/// Evaluates an elaborated expression. Throws kUnboundVariable,
/// kDivisionByZero, kNegativeBaseRationalExponent, kUnsupportedNode
/// (derivatives, unannotated StandardUnit).
Quantity eval_numeric(const ExprPtr& e, const EvalEnv& env);

struct PropValue {
  bool holds = false;
  bool approx = false;  // some comparison needed the tolerance
};

/// Decides a proposition under `env`. Function equalities and
/// ∀ over a kind are kUnsupportedNode.
PropValue eval_prop(const PropPtr& p, const EvalEnv& env);

/// The definitional hypotheses of a statement, oriented.
struct Definition {
  enum class Kind {
    kVar,       // x = e
    kValOf,     // val(x) = e, dimensionless e
    kPoint,     // f(c) = e
    kFunction,  // ∀ t, f(t) = e
  };
  Kind kind = Kind::kVar;
  std::string hyp;     // hypothesis name
  std::string symbol;  // x, f, or the printed f(c)
  std::string var;     // x or f
  ExprPtr point;       // kPoint: c
  std::string param;   // kFunction: t
  ExprPtr rhs;
  std::vector<std::string> deps;
};

/// Shape test only: the definition `p` would be if accepted. With `s`,
/// equations between function variables are not definitions.
std::optional<Definition> as_definition(const std::string& hyp_name,
                                        const PropPtr& p,
                                        const Statement* s = nullptr);

/// Greedy orientation in hypothesis order: a candidate is accepted unless
/// its symbol is already defined or it would close a dependency cycle.
/// Rejected cyclic candidates are returned in `demoted`; with
/// `demote_cyclic` false a cycle throws kCyclicDefinitions instead.
/// Accepted definitions come back in dependency order.
struct Orientation {
  std::vector<Definition> defs;
  std::vector<std::string> demoted;
};
Orientation orient_definitions(const std::vector<Hypothesis>& hyps,
                               const Statement* s = nullptr,
                               bool demote_cyclic = true);

/// Evaluates every scalar definition of an elaborated statement in
/// dependency order, starting from `seed` bindings. Definitions whose
/// right side cannot be evaluated are skipped. Function definitions land
/// in `functions`.
EvalEnv definitional_env(const Statement& elaborated,
                         std::map<std::string, Quantity> seed = {},
                         ConstantTable constants =
                             UnitDb::standard().constants());

/// Constants table with the statement's front-matter overrides applied.
ConstantTable constants_for(const Statement& s,
                            const ConstantTable& base =
                                UnitDb::standard().constants());

}  // namespace physk

#endif  // PHYSK_EVALUATOR_H_
