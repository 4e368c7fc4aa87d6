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


#include <algorithm>
#include <set>

#include "physk/lang.h"

namespace physk {
namespace {

// Binding levels: 1 add/sub, 2 mul/div, 3 smul, 4 unary minus, 5 power,
// 6 postfix and primaries.
int level(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kAdd:
    case ExprKind::kSub: return 1;
    case ExprKind::kMul:
    case ExprKind::kDiv: return 2;
    case ExprKind::kSMul: return 3;
    case ExprKind::kNeg: return 4;
    case ExprKind::kPow: return 5;
    case ExprKind::kNum: {
      auto d = to_decimal_string(e.number);
      return d && e.number >= 0 ? 6 : 0;
    }
    default: return 6;
  }
}

std::string_view fn_name(ElementaryFn fn) {
  switch (fn) {
    case ElementaryFn::kSin: return "sin";
    case ElementaryFn::kCos: return "cos";
    case ElementaryFn::kLog: return "log";
    case ElementaryFn::kExp: return "exp";
    case ElementaryFn::kSqrt: return "sqrt";
  }
  return "sin";
}

void print(const Expr& e, std::string& out);

void print_at(const ExprPtr& e, int min_level, std::string& out) {
  if (level(*e) < min_level) {
    out += '(';
    print(*e, out);
    out += ')';
  } else {
    print(*e, out);
  }
}

void print_binary(const Expr& e, const char* op, int lhs_level,
                  int rhs_level, std::string& out) {
  print_at(e.args[0], lhs_level, out);
  out += op;
  print_at(e.args[1], rhs_level, out);
}

void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::kNum: {
      auto d = to_decimal_string(e.number);
      out += d && e.number >= 0 ? *d : to_string(e.number);
      return;
    }
    case ExprKind::kConst:
    case ExprKind::kVar:
    case ExprKind::kUnit:
      out += e.name;
      return;
    case ExprKind::kStdUnit:
      out += "StandardUnit";
      out += e.kind_ref ? "[" + e.kind_ref->text + "]" : " _";
      return;
    case ExprKind::kPrefix:
    case ExprKind::kApply:
      out += e.name + "(";
      print(*e.args[0], out);
      out += ")";
      return;
    case ExprKind::kDeriv:
      out += "deriv(" + e.name + ", ";
      print(*e.args[0], out);
      out += ")";
      return;
    case ExprKind::kAdd: return print_binary(e, " + ", 1, 2, out);
    case ExprKind::kSub: return print_binary(e, " - ", 1, 2, out);
    case ExprKind::kMul: return print_binary(e, " * ", 2, 3, out);
    case ExprKind::kDiv: return print_binary(e, " / ", 2, 3, out);
    case ExprKind::kSMul: return print_binary(e, " • ", 4, 3, out);
    case ExprKind::kNeg:
      out += "-";
      print_at(e.args[0], 5, out);
      return;
    case ExprKind::kPow: {
      print_at(e.args[0], 5, out);
      out += "**";
      if (boost::multiprecision::denominator(e.number) == 1 && e.number >= 0) {
        out += to_string(e.number);
      } else {
        out += "(" + to_string(e.number) + ")";
      }
      return;
    }
    case ExprKind::kRPow:
      out += "rpow(";
      print(*e.args[0], out);
      out += ", ";
      print(*e.args[1], out);
      out += ")";
      return;
    case ExprKind::kCast:
      out += "cast(";
      print(*e.args[0], out);
      out += ", " + e.kind_ref->text + ")";
      return;
    case ExprKind::kVal:
      out += "val(";
      print(*e.args[0], out);
      out += ")";
      return;
    case ExprKind::kNorm:
      out += "‖";
      print(*e.args[0], out);
      out += "‖";
      return;
    case ExprKind::kFn:
      out += fn_name(e.fn);
      out += "(";
      print(*e.args[0], out);
      out += ")";
      return;
  }
}

// Prop levels: 0 quantifier, 1 implication, 2 disjunction, 3 conjunction,
// 4 atoms.
int prop_level(const Prop& p) {
  switch (p.kind) {
    case PropKind::kForallFinite:
    case PropKind::kForallFn: return 0;
    case PropKind::kImplies: return 1;
    case PropKind::kOr: return 2;
    case PropKind::kAnd: return 3;
    default: return 4;
  }
}

void print_prop_at(const PropPtr& p, int min_level, std::string& out);

void print_prop_into(const Prop& p, std::string& out) {
  auto cmp = [&](const char* op) {
    print(*p.lhs, out);
    out += op;
    print(*p.rhs, out);
  };
  switch (p.kind) {
    case PropKind::kEq: return cmp(" = ");
    case PropKind::kNe: return cmp(" ≠ ");
    case PropKind::kLe: return cmp(" ≤ ");
    case PropKind::kLt: return cmp(" < ");
    case PropKind::kAnd:
      print_prop_at(p.left, 4, out);
      out += " ∧ ";
      print_prop_at(p.right, 3, out);
      return;
    case PropKind::kOr:
      print_prop_at(p.left, 3, out);
      out += " ∨ ";
      print_prop_at(p.right, 2, out);
      return;
    case PropKind::kImplies:
      print_prop_at(p.left, 2, out);
      out += " → ";
      print_prop_at(p.right, 0, out);
      return;
    case PropKind::kForallFinite:
      out += "∀ " + p.var + " ∈ {";
      for (std::size_t i = 0; i < p.values.size(); ++i) {
        if (i > 0) out += ", ";
        print(*p.values[i], out);
      }
      out += "}, ";
      print_prop_at(p.left, 0, out);
      return;
    case PropKind::kForallFn:
      out += "∀ " + p.var + " : " + p.var_kind->text + ", ";
      print_prop_at(p.left, 0, out);
      return;
  }
}

void print_prop_at(const PropPtr& p, int min_level, std::string& out) {
  if (prop_level(*p) < min_level) {
    out += '(';
    print_prop_into(*p, out);
    out += ')';
  } else {
    print_prop_into(*p, out);
  }
}

bool opt_kind_eq(const std::optional<KindRef>& a,
                 const std::optional<KindRef>& b) {
  return a.has_value() == b.has_value() && (!a || *a == *b);
}

bool nested(const Expr& e) {
  for (const auto& a : e.args) {
    if (!e.span.contains(a->span) || !nested(*a)) return false;
  }
  return true;
}

bool nested(const Prop& p) {
  for (const ExprPtr* e : {&p.lhs, &p.rhs}) {
    if (*e && (!p.span.contains((*e)->span) || !nested(**e))) return false;
  }
  for (const PropPtr* c : {&p.left, &p.right}) {
    if (*c && (!p.span.contains((*c)->span) || !nested(**c))) return false;
  }
  for (const auto& v : p.values) {
    if (!p.span.contains(v->span) || !nested(*v)) return false;
  }
  return true;
}

void collect(const Expr& e, const std::set<std::string>& bound,
             std::vector<std::string>& out) {
  if ((e.kind == ExprKind::kVar || e.kind == ExprKind::kApply ||
       e.kind == ExprKind::kDeriv) &&
      !bound.count(e.name) &&
      std::find(out.begin(), out.end(), e.name) == out.end()) {
    out.push_back(e.name);
  }
  for (const auto& a : e.args) collect(*a, bound, out);
}

void collect(const Prop& p, std::set<std::string> bound,
             std::vector<std::string>& out) {
  for (const auto& v : p.values) collect(*v, bound, out);
  if (p.kind == PropKind::kForallFinite || p.kind == PropKind::kForallFn) {
    bound.insert(p.var);
  }
  if (p.lhs) collect(*p.lhs, bound, out);
  if (p.rhs) collect(*p.rhs, bound, out);
  if (p.left) collect(*p.left, bound, out);
  if (p.right) collect(*p.right, bound, out);
}

}  // namespace

std::string print_expr(const ExprPtr& e) {
  std::string out;
  print(*e, out);
  return out;
}

std::string print_prop(const PropPtr& p) {
  std::string out;
  print_prop_at(p, 0, out);
  return out;
}

std::string print_kind(const Decl& d) {
  if (d.domain) return d.domain->text + " -> " + d.kind.text;
  return d.kind.text;
}

std::string print_statement(const Statement& s) {
  std::string out;
  const Metadata& m = s.meta;
  if (!m.name.empty() || m.level || m.topic || !m.source.empty() ||
      !m.constants.empty()) {
    out += "---\n";
    if (!m.name.empty()) out += "name: " + m.name + "\n";
    if (m.level) out += "level: " + std::string(level_name(*m.level)) + "\n";
    if (m.topic) out += "topic: " + std::string(topic_name(*m.topic)) + "\n";
    if (!m.source.empty()) out += "source: " + m.source + "\n";
    if (!m.constants.empty()) {
      out += "constants: ";
      for (std::size_t i = 0; i < m.constants.size(); ++i) {
        if (i > 0) out += ", ";
        out += m.constants[i].first + " = " + to_string(m.constants[i].second);
      }
      out += "\n";
    }
    out += "---\n";
  }
  out += "theorem " + s.name + "\n";
  for (const Decl& d : s.decls) {
    out += "  (" + d.name + " : " + print_kind(d) + ")\n";
  }
  for (const Hypothesis& h : s.hyps) {
    out += "  (" + h.name + " := " + print_prop(h.prop) + ")\n";
  }
  out += "  : " + print_prop(s.goal) + "\n";
  return out;
}

bool ast_eq(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->number != b->number ||
      a->args.size() != b->args.size() ||
      !opt_kind_eq(a->kind_ref, b->kind_ref)) {
    return false;
  }
  if (a->kind == ExprKind::kFn && a->fn != b->fn) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!ast_eq(a->args[i], b->args[i])) return false;
  }
  return true;
}

bool ast_eq(const PropPtr& a, const PropPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->var != b->var ||
      a->values.size() != b->values.size() ||
      !opt_kind_eq(a->var_kind, b->var_kind)) {
    return false;
  }
  for (std::size_t i = 0; i < a->values.size(); ++i) {
    if (!ast_eq(a->values[i], b->values[i])) return false;
  }
  return ast_eq(a->lhs, b->lhs) && ast_eq(a->rhs, b->rhs) &&
         ast_eq(a->left, b->left) && ast_eq(a->right, b->right);
}

bool ast_eq(const Statement& a, const Statement& b) {
  if (a.name != b.name || a.meta.name != b.meta.name ||
      a.meta.level != b.meta.level || a.meta.topic != b.meta.topic ||
      a.meta.source != b.meta.source || a.meta.constants != b.meta.constants ||
      a.decls.size() != b.decls.size() || a.hyps.size() != b.hyps.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const Decl& x = a.decls[i];
    const Decl& y = b.decls[i];
    if (x.name != y.name || !(x.kind == y.kind) ||
        !opt_kind_eq(x.domain, y.domain)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.hyps.size(); ++i) {
    if (a.hyps[i].name != b.hyps[i].name ||
        !ast_eq(a.hyps[i].prop, b.hyps[i].prop)) {
      return false;
    }
  }
  return ast_eq(a.goal, b.goal);
}

bool spans_nested(const Statement& s) {
  for (const Hypothesis& h : s.hyps) {
    if (!h.span.contains(h.prop->span) || !nested(*h.prop)) return false;
  }
  return nested(*s.goal);
}

std::vector<std::string> free_vars(const ExprPtr& e) {
  std::vector<std::string> out;
  collect(*e, {}, out);
  return out;
}

std::vector<std::string> free_vars(const PropPtr& p) {
  std::vector<std::string> out;
  collect(*p, {}, out);
  return out;
}

}  // namespace physk
