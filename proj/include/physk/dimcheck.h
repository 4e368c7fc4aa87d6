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

#ifndef PHYSK_DIMCHECK_H_
#define PHYSK_DIMCHECK_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "physk/ast.h"
#include "physk/unitdb.h"

namespace physk {

/// Outcome for one hypothesis or the goal.
struct DimEntry {
  std::string name;  // hypothesis name, or "goal"
  bool homogeneous = true;
  Span span;          // offending subexpression
  Dimension expected;
  Dimension found;
  std::string message;
};

/// One entry per hypothesis, in order, then one for the goal.
struct DimReport {
  std::vector<DimEntry> entries;

  bool ok() const;
  std::size_t mismatches() const;
};

/// Dimension environment: declared variables plus quantifier-bound ones.
struct DimScope {
  const Statement* statement = nullptr;
  std::map<std::string, Dimension> bound;
};

DimReport check_dimensions(const Statement& s,
                           const UnitDb& db = UnitDb::standard());

/// The dimension of `e`, or nullopt when `e` is polymorphic (a literal 0
/// or an unannotated StandardUnit). Throws kDimensionMismatch on an
/// inhomogeneous subterm.
std::optional<Dimension> infer_dimension(const ExprPtr& e,
                                         const DimScope& scope,
                                         const UnitDb& db = UnitDb::standard());

/// Rewrites every `StandardUnit _` to carry its dimension and every
/// polymorphic literal 0 at a dimensioned position to
/// `0 • StandardUnit[{dim}]`. Requires a homogeneous statement.
Statement elaborate(const Statement& s, const UnitDb& db = UnitDb::standard());
PropPtr elaborate(const PropPtr& p, const DimScope& scope,
                  const UnitDb& db = UnitDb::standard());
ExprPtr elaborate(const ExprPtr& e, const Dimension& expected,
                  const DimScope& scope, const UnitDb& db = UnitDb::standard());

}  // namespace physk

#endif  // PHYSK_DIMCHECK_H_
