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

#include "physk/rewrite.h"

#include <algorithm>
#include <memory>
#include <utility>
#include <vector>

#include "physk/lang.h"

namespace physk {
namespace {

bool contains(const std::vector<std::string>& names, const std::string& n) {
  return std::find(names.begin(), names.end(), n) != names.end();
}

// Names the replacement could bring into a binder's scope.
std::vector<std::string> incoming_names(const Rewrite& rw) {
  std::vector<std::string> out = free_vars(rw.repl);
  if (rw.kind == Rewrite::Kind::kFunction) {
    out.erase(std::remove(out.begin(), out.end(), rw.param), out.end());
  }
  return out;
}

std::string fresh_name(const std::string& base, const PropPtr& body,
                       const std::vector<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!contains(avoid, candidate) && !mentions(body, candidate)) {
      return candidate;
    }
  }
}

}  // namespace

Rewrite Rewrite::var(std::string name, ExprPtr repl) {
  Rewrite rw;
  rw.kind = Kind::kVar;
  rw.name = std::move(name);
  rw.repl = std::move(repl);
  return rw;
}

Rewrite Rewrite::at_point(ExprPtr point, ExprPtr repl) {
  Rewrite rw;
  rw.kind = Kind::kPoint;
  rw.name = point->name;
  rw.point = std::move(point);
  rw.repl = std::move(repl);
  return rw;
}

Rewrite Rewrite::function(std::string name, std::string param, ExprPtr body) {
  Rewrite rw;
  rw.kind = Kind::kFunction;
  rw.name = std::move(name);
  rw.param = std::move(param);
  rw.repl = std::move(body);
  return rw;
}

ExprPtr apply_rewrite(const ExprPtr& e, const Rewrite& rw) {
  switch (rw.kind) {
    case Rewrite::Kind::kVar:
      if (e->kind == ExprKind::kVar && e->name == rw.name) return rw.repl;
      break;
    case Rewrite::Kind::kPoint:
      if (ast_eq(e, rw.point)) return rw.repl;
      break;
    case Rewrite::Kind::kFunction:
      break;
  }
  if (e->args.empty()) return e;
  std::vector<ExprPtr> args;
  bool changed = false;
  for (const auto& a : e->args) {
    args.push_back(apply_rewrite(a, rw));
    changed = changed || args.back() != a;
  }
  if (rw.kind == Rewrite::Kind::kFunction && e->kind == ExprKind::kApply &&
      e->name == rw.name) {
    return apply_rewrite(rw.repl, Rewrite::var(rw.param, args[0]));
  }
  if (!changed) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->args = std::move(args);
  return copy;
}

PropPtr apply_rewrite(const PropPtr& p, const Rewrite& rw) {
  auto copy = std::make_shared<Prop>(*p);
  if (p->lhs) copy->lhs = apply_rewrite(p->lhs, rw);
  if (p->rhs) copy->rhs = apply_rewrite(p->rhs, rw);
  for (auto& v : copy->values) v = apply_rewrite(v, rw);
  if (p->right) copy->right = apply_rewrite(p->right, rw);
  if (!p->left) return copy;
  bool binder = p->kind == PropKind::kForallFinite ||
                p->kind == PropKind::kForallFn;
  if (!binder) {
    copy->left = apply_rewrite(p->left, rw);
    return copy;
  }
  // Shadowed: the rewrite refers to the bound name.
  bool shadowed = false;
  switch (rw.kind) {
    case Rewrite::Kind::kVar:
    case Rewrite::Kind::kFunction:
      shadowed = rw.name == p->var;
      break;
    case Rewrite::Kind::kPoint:
      shadowed = contains(free_vars(rw.point), p->var);
      break;
  }
  if (shadowed) return copy;
  PropPtr body = p->left;
  std::vector<std::string> incoming = incoming_names(rw);
  if (contains(incoming, p->var)) {
    std::string renamed = fresh_name(p->var, body, incoming);
    body = apply_rewrite(body, Rewrite::var(p->var,
                                            make_named(ExprKind::kVar, renamed)));
    copy->var = renamed;
  }
  copy->left = apply_rewrite(body, rw);
  return copy;
}

bool mentions(const ExprPtr& e, const std::string& name) {
  if ((e->kind == ExprKind::kVar || e->kind == ExprKind::kApply ||
       e->kind == ExprKind::kDeriv) &&
      e->name == name) {
    return true;
  }
  for (const auto& a : e->args) {
    if (mentions(a, name)) return true;
  }
  return false;
}

bool mentions(const PropPtr& p, const std::string& name) {
  if (p->var == name) return true;
  if (p->lhs && mentions(p->lhs, name)) return true;
  if (p->rhs && mentions(p->rhs, name)) return true;
  for (const auto& v : p->values) {
    if (mentions(v, name)) return true;
  }
  if (p->left && mentions(p->left, name)) return true;
  return p->right && mentions(p->right, name);
}

}  // namespace physk
