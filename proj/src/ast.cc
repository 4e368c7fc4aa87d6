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


#include "physk/ast.h"

namespace physk {
namespace {

std::shared_ptr<Expr> node(ExprKind kind, Span span) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->span = span;
  return e;
}

std::shared_ptr<Prop> prop_node(PropKind kind, Span span) {
  auto p = std::make_shared<Prop>();
  p->kind = kind;
  p->span = span;
  return p;
}

}  // namespace

KindRef kind_of_dimension(const Dimension& dim) {
  return KindRef{"{" + dim.to_string() + "}", dim};
}

ExprPtr make_num(BigRational value, Span span) {
  auto e = node(ExprKind::kNum, span);
  e->number = std::move(value);
  return e;
}

ExprPtr make_named(ExprKind kind, std::string name, Span span) {
  auto e = node(kind, span);
  e->name = std::move(name);
  return e;
}

ExprPtr make_std_unit(std::optional<KindRef> kind, Span span) {
  auto e = node(ExprKind::kStdUnit, span);
  e->kind_ref = std::move(kind);
  return e;
}

ExprPtr make_unary(ExprKind kind, ExprPtr arg, Span span) {
  auto e = node(kind, span);
  e->args.push_back(std::move(arg));
  return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr a, ExprPtr b, Span span) {
  auto e = node(kind, span);
  e->args.push_back(std::move(a));
  e->args.push_back(std::move(b));
  return e;
}

ExprPtr make_pow(ExprPtr base, BigRational exponent, Span span) {
  auto e = node(ExprKind::kPow, span);
  e->args.push_back(std::move(base));
  e->number = std::move(exponent);
  return e;
}

ExprPtr make_cast(ExprPtr arg, KindRef kind, Span span) {
  auto e = node(ExprKind::kCast, span);
  e->args.push_back(std::move(arg));
  e->kind_ref = std::move(kind);
  return e;
}

ExprPtr make_fn(ElementaryFn fn, ExprPtr arg, Span span) {
  auto e = node(ExprKind::kFn, span);
  e->fn = fn;
  e->args.push_back(std::move(arg));
  return e;
}

ExprPtr make_call(ExprKind kind, std::string name, ExprPtr arg, Span span) {
  auto e = node(kind, span);
  e->name = std::move(name);
  e->args.push_back(std::move(arg));
  return e;
}

PropPtr make_cmp(PropKind kind, ExprPtr lhs, ExprPtr rhs, Span span) {
  auto p = prop_node(kind, span);
  p->lhs = std::move(lhs);
  p->rhs = std::move(rhs);
  return p;
}

PropPtr make_connective(PropKind kind, PropPtr a, PropPtr b, Span span) {
  auto p = prop_node(kind, span);
  p->left = std::move(a);
  p->right = std::move(b);
  return p;
}

PropPtr make_forall_finite(std::string var, std::vector<ExprPtr> values,
                           PropPtr body, Span span) {
  auto p = prop_node(PropKind::kForallFinite, span);
  p->var = std::move(var);
  p->values = std::move(values);
  p->left = std::move(body);
  return p;
}

PropPtr make_forall_fn(std::string var, KindRef kind, PropPtr body,
                       Span span) {
  auto p = prop_node(PropKind::kForallFn, span);
  p->var = std::move(var);
  p->var_kind = std::move(kind);
  p->left = std::move(body);
  return p;
}

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kCollege: return "college";
    case Level::kCompEasy: return "comp-easy";
    case Level::kCompHard: return "comp-hard";
  }
  return "college";
}

std::optional<Level> parse_level(std::string_view name) {
  for (Level l : kLevels) {
    if (level_name(l) == name) return l;
  }
  return std::nullopt;
}

const Decl* Statement::find_decl(const std::string& n) const {
  for (const auto& d : decls) {
    if (d.name == n) return &d;
  }
  return nullptr;
}

const Hypothesis* Statement::find_hyp(const std::string& n) const {
  for (const auto& h : hyps) {
    if (h.name == n) return &h;
  }
  return nullptr;
}

}  // namespace physk
