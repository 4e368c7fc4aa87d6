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

#ifndef PHYSK_AST_H_
#define PHYSK_AST_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "physk/dimension.h"
#include "physk/numeric.h"
#include "physk/rational.h"
#include "physk/unitdb.h"

namespace physk {

/// Half-open byte range into the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool contains(const Span& inner) const {
    return begin <= inner.begin && inner.end <= end;
  }
};

/// A quantity kind as written (`Force / Charge`, `{M^1 L^1}`) with its
/// resolved dimension. `text` is the canonical spelling.
struct KindRef {
  std::string text;
  Dimension dim;

  friend bool operator==(const KindRef& a, const KindRef& b) {
    return a.text == b.text && a.dim == b.dim;
  }
};

/// Builds the canonical kind spelling for a bare dimension.
KindRef kind_of_dimension(const Dimension& dim);

enum class ExprKind {
  kNum,      // number
  kConst,    // name: "π" or a database constant
  kVar,      // name
  kUnit,     // name
  kStdUnit,  // kind_ref: explicit kind, or none for `StandardUnit _`
  kPrefix,   // name, args[0]
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kSMul,   // args[0] scalar, args[1] quantity
  kPow,    // args[0], number is the exponent
  kRPow,   // args[0] base, args[1] exponent
  kCast,   // args[0], kind_ref target
  kVal,
  kNorm,
  kFn,     // fn, args[0]
  kApply,  // name is the function variable, args[0]
  kDeriv,  // name is the function variable, args[0] the point
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::kNum;
  Span span;
  std::string name;
  BigRational number;
  ElementaryFn fn = ElementaryFn::kSin;
  std::optional<KindRef> kind_ref;
  std::vector<ExprPtr> args;
};

// Node builders. Spans default to empty for synthesized nodes.
ExprPtr make_num(BigRational value, Span span = {});
ExprPtr make_named(ExprKind kind, std::string name, Span span = {});
ExprPtr make_std_unit(std::optional<KindRef> kind, Span span = {});
ExprPtr make_unary(ExprKind kind, ExprPtr arg, Span span = {});
ExprPtr make_binary(ExprKind kind, ExprPtr a, ExprPtr b, Span span = {});
ExprPtr make_pow(ExprPtr base, BigRational exponent, Span span = {});
ExprPtr make_cast(ExprPtr arg, KindRef kind, Span span = {});
ExprPtr make_fn(ElementaryFn fn, ExprPtr arg, Span span = {});
ExprPtr make_call(ExprKind kind, std::string name, ExprPtr arg,
                  Span span = {});

enum class PropKind {
  kEq,
  kNe,
  kLe,
  kLt,
  kAnd,
  kOr,
  kImplies,
  kForallFinite,  // var ∈ values, body in `left`
  kForallFn,      // var : var_kind, body in `left`
};

struct Prop;
using PropPtr = std::shared_ptr<const Prop>;

struct Prop {
  PropKind kind = PropKind::kEq;
  Span span;
  ExprPtr lhs;
  ExprPtr rhs;
  PropPtr left;
  PropPtr right;
  std::string var;
  std::vector<ExprPtr> values;
  std::optional<KindRef> var_kind;

  bool is_comparison() const {
    return kind == PropKind::kEq || kind == PropKind::kNe ||
           kind == PropKind::kLe || kind == PropKind::kLt;
  }
};

PropPtr make_cmp(PropKind kind, ExprPtr lhs, ExprPtr rhs, Span span = {});
PropPtr make_connective(PropKind kind, PropPtr a, PropPtr b, Span span = {});
PropPtr make_forall_finite(std::string var, std::vector<ExprPtr> values,
                           PropPtr body, Span span = {});
PropPtr make_forall_fn(std::string var, KindRef kind, PropPtr body,
                       Span span = {});

/// `x : Kind` or, for one-argument functions, `f : Domain -> Kind`.
struct Decl {
  std::string name;
  std::optional<KindRef> domain;
  KindRef kind;
  Span span;

  bool is_function() const { return domain.has_value(); }
};

struct Hypothesis {
  std::string name;
  PropPtr prop;
  Span span;
};

enum class Level { kCollege, kCompEasy, kCompHard };

inline constexpr Level kLevels[] = {Level::kCollege, Level::kCompEasy,
                                    Level::kCompHard};

/// "college", "comp-easy", "comp-hard".
std::string_view level_name(Level level);
std::optional<Level> parse_level(std::string_view name);

/// Front-matter block of a `.phys` file.
struct Metadata {
  std::string name;
  std::optional<Level> level;
  std::optional<Topic> topic;
  std::string source;
  /// Constant overrides in file order, values in coherent SI.
  std::vector<std::pair<std::string, BigRational>> constants;
};

struct Statement {
  Metadata meta;
  std::string name;
  std::vector<Decl> decls;
  std::vector<Hypothesis> hyps;
  PropPtr goal;

  const Decl* find_decl(const std::string& name) const;
  const Hypothesis* find_hyp(const std::string& name) const;
};

}  // namespace physk

#endif  // PHYSK_AST_H_
