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

#ifndef PHYSK_LANG_H_
#define PHYSK_LANG_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "physk/ast.h"
#include "physk/unitdb.h"

namespace physk {

/// 1-based line and column of a byte offset.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};
SourcePos source_pos(std::string_view text, std::size_t offset);

/// Parses a `.phys` document: optional front matter, then one theorem.
/// Throws Error(kParseError) with "line:col: message; expected ...".
Statement parse_statement(std::string_view text,
                          const UnitDb& db = UnitDb::standard());

/// Names visible to a standalone expression or proposition: the
/// statement's declarations plus extra bound variables with their kinds.
struct ExprScope {
  const Statement* statement = nullptr;
  std::map<std::string, KindRef> bound;
};

ExprPtr parse_expr(std::string_view text, const ExprScope& scope,
                   const UnitDb& db = UnitDb::standard());
PropPtr parse_prop(std::string_view text, const ExprScope& scope,
                   const UnitDb& db = UnitDb::standard());

/// Canonical text with minimal parentheses. parse ∘ print is the
/// identity up to spans.
std::string print_expr(const ExprPtr& e);
std::string print_prop(const PropPtr& p);
std::string print_kind(const Decl& d);
std::string print_statement(const Statement& s);

// Structural equality ignoring spans.
bool ast_eq(const ExprPtr& a, const ExprPtr& b);
bool ast_eq(const PropPtr& a, const PropPtr& b);
bool ast_eq(const Statement& a, const Statement& b);

/// Visits every node with its parent's span; used by span-coverage tests.
/// Returns false at the first child whose span escapes its parent's.
bool spans_nested(const Statement& s);

/// Names of every Var/Apply/Deriv occurrence not bound by a quantifier.
std::vector<std::string> free_vars(const ExprPtr& e);
std::vector<std::string> free_vars(const PropPtr& p);

}  // namespace physk

#endif  // PHYSK_LANG_H_
