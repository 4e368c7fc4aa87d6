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

#include "physk/dimcheck.h"

#include <memory>
#include <utility>

#include "physk/error.h"
#include "physk/lang.h"

namespace physk {
namespace {

struct Mismatch {
  Span span;
  Dimension expected;
  Dimension found;
  std::string message;
};

std::string describe(const Dimension& d) { return "[" + d.to_string() + "]"; }

ExprPtr with_args(const ExprPtr& e, std::vector<ExprPtr> args) {
  auto copy = std::make_shared<Expr>(*e);
  copy->args = std::move(args);
  return copy;
}

bool is_zero_literal(const ExprPtr& e) {
  return e->kind == ExprKind::kNum && e->number == 0;
}

// Bidirectional checker. infer() returns nullopt for polymorphic terms,
// check() pushes an expected dimension down. Both return the elaborated
// node alongside.
class Typer {
 public:
  Typer(DimScope scope, const UnitDb& db) : scope_(std::move(scope)), db_(db) {}

  struct Typed {
    ExprPtr expr;
    std::optional<Dimension> dim;
  };

  Typed infer(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::kNum:
        if (e->number == 0) return {e, std::nullopt};
        return {e, Dimension()};
      case ExprKind::kConst:
        if (e->name == "π") return {e, Dimension()};
        return {e, db_.lookup_constant(e->name).dim()};
      case ExprKind::kVar:
        return {e, var_dim(e)};
      case ExprKind::kUnit:
        return {e, db_.lookup_unit(e->name).dim()};
      case ExprKind::kStdUnit:
        if (e->kind_ref) return {e, e->kind_ref->dim};
        return {e, std::nullopt};
      case ExprKind::kPrefix:
      case ExprKind::kNeg: {
        Typed a = infer(e->args[0]);
        return {with_args(e, {a.expr}), a.dim};
      }
      case ExprKind::kAdd:
      case ExprKind::kSub: {
        Typed a = infer(e->args[0]);
        if (a.dim) {
          ExprPtr b = check(e->args[1], *a.dim);
          return {with_args(e, {a.expr, b}), a.dim};
        }
        Typed b = infer(e->args[1]);
        if (b.dim) {
          ExprPtr a2 = check(e->args[0], *b.dim);
          return {with_args(e, {a2, b.expr}), b.dim};
        }
        return {with_args(e, {a.expr, b.expr}), std::nullopt};
      }
      case ExprKind::kMul:
      case ExprKind::kDiv: {
        Typed a = strict(e->args[0]);
        Typed b = strict(e->args[1]);
        Dimension d = e->kind == ExprKind::kMul ? dim_combine(*a.dim, *b.dim)
                                                : dim_divide(*a.dim, *b.dim);
        return {with_args(e, {a.expr, b.expr}), d};
      }
      case ExprKind::kSMul: {
        ExprPtr s = check(e->args[0], Dimension());
        Typed q = infer(e->args[1]);
        return {with_args(e, {s, q.expr}), q.dim};
      }
      case ExprKind::kPow: {
        Typed a = strict(e->args[0]);
        Dimension d = a.dim->is_dimensionless()
                          ? Dimension()
                          : dim_scale(*a.dim, SmallRational::from_big(e->number));
        return {with_args(e, {a.expr}), d};
      }
      case ExprKind::kRPow: {
        ExprPtr a = check(e->args[0], Dimension());
        ExprPtr b = check(e->args[1], Dimension());
        return {with_args(e, {a, b}), Dimension()};
      }
      case ExprKind::kCast: {
        const Dimension& target = e->kind_ref->dim;
        Typed a = infer(e->args[0]);
        if (!a.dim) return {with_args(e, {check(e->args[0], target)}), target};
        if (!(*a.dim == target)) {
          throw Mismatch{e->span, target, *a.dim,
                         "invalid cast to " + e->kind_ref->text + ": found " +
                             describe(*a.dim)};
        }
        return {with_args(e, {a.expr}), target};
      }
      case ExprKind::kVal:
      case ExprKind::kNorm: {
        Typed a = infer(e->args[0]);
        ExprPtr arg = a.dim ? a.expr : check(e->args[0], Dimension());
        return {with_args(e, {arg}), Dimension()};
      }
      case ExprKind::kFn:
        return {with_args(e, {check(e->args[0], Dimension())}), Dimension()};
      case ExprKind::kApply:
      case ExprKind::kDeriv: {
        const Decl* d = function_decl(e);
        ExprPtr arg = check(e->args[0], d->domain->dim);
        Dimension out = e->kind == ExprKind::kApply
                            ? d->kind.dim
                            : dim_divide(d->kind.dim, d->domain->dim);
        return {with_args(e, {arg}), out};
      }
    }
    return {e, Dimension()};
  }

  // infer() with polymorphic leaves resolved: 0 becomes dimensionless,
  // an unannotated StandardUnit is rejected.
  Typed strict(const ExprPtr& e) {
    Typed t = infer(e);
    if (t.dim) return t;
    if (contains_bare_std_unit(e)) {
      throw Mismatch{e->span, Dimension(), Dimension(),
                     "cannot infer the kind of StandardUnit _ here"};
    }
    return {check(e, Dimension()), Dimension()};
  }

  ExprPtr check(const ExprPtr& e, const Dimension& expected) {
    switch (e->kind) {
      case ExprKind::kNum:
        if (e->number == 0) {
          if (expected.is_dimensionless()) return e;
          return make_binary(ExprKind::kSMul, e,
                             make_std_unit(kind_of_dimension(expected)),
                             e->span);
        }
        break;
      case ExprKind::kStdUnit:
        if (!e->kind_ref) {
          return make_std_unit(kind_of_dimension(expected), e->span);
        }
        break;
      case ExprKind::kSMul:
        return with_args(e, {check(e->args[0], Dimension()),
                             check(e->args[1], expected)});
      case ExprKind::kNeg:
      case ExprKind::kPrefix:
        return with_args(e, {check(e->args[0], expected)});
      case ExprKind::kAdd:
      case ExprKind::kSub:
        return with_args(e, {check(e->args[0], expected),
                             check(e->args[1], expected)});
      default:
        break;
    }
    Typed t = infer(e);
    if (!t.dim) return check_poly(t.expr, expected);
    if (!(*t.dim == expected)) {
      throw Mismatch{e->span, expected, *t.dim,
                     "expected " + describe(expected) + ", found " +
                         describe(*t.dim)};
    }
    return t.expr;
  }

  void check_prop(const PropPtr& p) { out_ = elaborate_prop(p); }

  PropPtr elaborate_prop(const PropPtr& p) {
    auto copy = std::make_shared<Prop>(*p);
    switch (p->kind) {
      case PropKind::kEq:
      case PropKind::kNe:
      case PropKind::kLe:
      case PropKind::kLt: {
        if (function_var(p->lhs) || function_var(p->rhs)) {
          check_function_equation(*p);
          return copy;
        }
        Typed l = infer(p->lhs);
        if (l.dim) {
          copy->lhs = l.expr;
          copy->rhs = check(p->rhs, *l.dim);
          return copy;
        }
        Typed r = infer(p->rhs);
        Dimension d = r.dim ? *r.dim : Dimension();
        copy->lhs = check(p->lhs, d);
        copy->rhs = r.dim ? r.expr : check(p->rhs, d);
        return copy;
      }
      case PropKind::kAnd:
      case PropKind::kOr:
      case PropKind::kImplies:
        copy->left = elaborate_prop(p->left);
        copy->right = elaborate_prop(p->right);
        return copy;
      case PropKind::kForallFinite: {
        for (auto& v : copy->values) v = check(v, Dimension());
        auto saved = scope_.bound;
        scope_.bound[p->var] = Dimension();
        copy->left = elaborate_prop(p->left);
        scope_.bound = std::move(saved);
        return copy;
      }
      case PropKind::kForallFn: {
        auto saved = scope_.bound;
        scope_.bound[p->var] = p->var_kind ? p->var_kind->dim : Dimension();
        copy->left = elaborate_prop(p->left);
        scope_.bound = std::move(saved);
        return copy;
      }
    }
    return copy;
  }

  PropPtr result() const { return out_; }

 private:
  ExprPtr check_poly(const ExprPtr& e, const Dimension& expected) {
    // Polymorphic composite such as `-(0)`: recheck with the expectation.
    switch (e->kind) {
      case ExprKind::kNum:
      case ExprKind::kStdUnit:
      case ExprKind::kSMul:
      case ExprKind::kNeg:
      case ExprKind::kPrefix:
      case ExprKind::kAdd:
      case ExprKind::kSub:
        return check(e, expected);
      default:
        return e;
    }
  }

  static bool contains_bare_std_unit(const ExprPtr& e) {
    if (e->kind == ExprKind::kStdUnit && !e->kind_ref) return true;
    for (const auto& a : e->args) {
      if (contains_bare_std_unit(a)) return true;
    }
    return false;
  }

  const Decl* function_var(const ExprPtr& e) const {
    if (e->kind != ExprKind::kVar || scope_.bound.count(e->name)) {
      return nullptr;
    }
    const Decl* d = scope_.statement ? scope_.statement->find_decl(e->name)
                                     : nullptr;
    return d && d->is_function() ? d : nullptr;
  }

  void check_function_equation(const Prop& p) {
    const Decl* f = function_var(p.lhs);
    const Decl* g = function_var(p.rhs);
    if (!f || !g) {
      const ExprPtr& bad = f ? p.lhs : p.rhs;
      throw Mismatch{bad->span, Dimension(), Dimension(),
                     "function '" + bad->name +
                         "' compared with a non-function"};
    }
    if (p.kind != PropKind::kEq && p.kind != PropKind::kNe) {
      throw Mismatch{p.span, Dimension(), Dimension(),
                     "functions can only be compared for equality"};
    }
    if (!(f->domain->dim == g->domain->dim)) {
      throw Mismatch{p.rhs->span, f->domain->dim, g->domain->dim,
                     "function domains differ"};
    }
    if (!(f->kind.dim == g->kind.dim)) {
      throw Mismatch{p.rhs->span, f->kind.dim, g->kind.dim,
                     "function codomains differ"};
    }
  }

  Dimension var_dim(const ExprPtr& e) const {
    auto it = scope_.bound.find(e->name);
    if (it != scope_.bound.end()) return it->second;
    const Decl* d = scope_.statement ? scope_.statement->find_decl(e->name)
                                     : nullptr;
    if (!d) {
      throw Error(ErrorCode::kUnboundVariable,
                  "undeclared variable '" + e->name + "'");
    }
    if (d->is_function()) {
      throw Mismatch{e->span, d->kind.dim, d->kind.dim,
                     "function '" + e->name + "' used as a value"};
    }
    return d->kind.dim;
  }

  const Decl* function_decl(const ExprPtr& e) const {
    const Decl* d = scope_.statement ? scope_.statement->find_decl(e->name)
                                     : nullptr;
    if (!d || !d->is_function()) {
      throw Error(ErrorCode::kUnboundVariable,
                  "'" + e->name + "' is not a declared function");
    }
    return d;
  }

  DimScope scope_;
  const UnitDb& db_;
  PropPtr out_;
};

DimEntry run_entry(const std::string& name, const PropPtr& p,
                   const Statement& s, const UnitDb& db) {
  DimEntry entry;
  entry.name = name;
  Typer typer(DimScope{&s, {}}, db);
  try {
    typer.check_prop(p);
  } catch (const Mismatch& m) {
    entry.homogeneous = false;
    entry.span = m.span;
    entry.expected = m.expected;
    entry.found = m.found;
    entry.message = m.message;
  } catch (const Error& err) {
    entry.homogeneous = false;
    entry.span = p->span;
    entry.message = err.what();
  }
  return entry;
}

}  // namespace

bool DimReport::ok() const { return mismatches() == 0; }

std::size_t DimReport::mismatches() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.homogeneous ? 0 : 1;
  return n;
}

DimReport check_dimensions(const Statement& s, const UnitDb& db) {
  DimReport report;
  for (const auto& h : s.hyps) {
    report.entries.push_back(run_entry(h.name, h.prop, s, db));
  }
  report.entries.push_back(run_entry("goal", s.goal, s, db));
  return report;
}

std::optional<Dimension> infer_dimension(const ExprPtr& e,
                                         const DimScope& scope,
                                         const UnitDb& db) {
  Typer typer(scope, db);
  try {
    return typer.infer(e).dim;
  } catch (const Mismatch& m) {
    throw Error(ErrorCode::kDimensionMismatch, m.message);
  }
}

PropPtr elaborate(const PropPtr& p, const DimScope& scope, const UnitDb& db) {
  Typer typer(scope, db);
  try {
    return typer.elaborate_prop(p);
  } catch (const Mismatch& m) {
    throw Error(ErrorCode::kDimensionMismatch, m.message);
  }
}

ExprPtr elaborate(const ExprPtr& e, const Dimension& expected,
                  const DimScope& scope, const UnitDb& db) {
  Typer typer(scope, db);
  try {
    return typer.check(e, expected);
  } catch (const Mismatch& m) {
    throw Error(ErrorCode::kDimensionMismatch, m.message);
  }
}

Statement elaborate(const Statement& s, const UnitDb& db) {
  Statement out = s;
  DimScope scope{&s, {}};
  for (auto& h : out.hyps) h.prop = elaborate(h.prop, scope, db);
  out.goal = elaborate(out.goal, scope, db);
  return out;
}

}  // namespace physk
