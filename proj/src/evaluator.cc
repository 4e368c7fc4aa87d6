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

#include "physk/evaluator.h"

#include <algorithm>
#include <set>
#include <utility>

#include "physk/error.h"
#include "physk/lang.h"
#include "physk/rewrite.h"

namespace physk {
namespace {

const Quantity& lookup_value(const EvalEnv& env, const std::string& name) {
  auto it = env.values.find(name);
  if (it == env.values.end()) {
    throw Error(ErrorCode::kUnboundVariable,
                "variable '" + name + "' has no value");
  }
  return it->second;
}

NumericValue scalar(const Quantity& q) { return q.val(); }

PropValue compare_prop(const Prop& p, const EvalEnv& env) {
  Quantity a = eval_numeric(p.lhs, env);
  Quantity b = eval_numeric(p.rhs, env);
  if (!(a.dim() == b.dim())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "comparison of " + a.to_string() + " with " + b.to_string());
  }
  Comparison c = compare(a.val(), b.val(), env.numeric);
  PropValue out;
  out.approx = c.approx;
  switch (p.kind) {
    case PropKind::kEq:
      out.holds = c.sign == 0;
      break;
    case PropKind::kNe:
      out.holds = c.sign != 0;
      break;
    case PropKind::kLe:
      out.holds = c.sign <= 0;
      break;
    case PropKind::kLt:
      out.holds = c.sign < 0;
      break;
    default:
      break;
  }
  return out;
}

}  // namespace

Quantity eval_numeric(const ExprPtr& e, const EvalEnv& env) {
  const auto& a = e->args;
  switch (e->kind) {
    case ExprKind::kNum:
      return Quantity::dimensionless(e->number);
    case ExprKind::kConst:
      if (e->name == "π") return Quantity::dimensionless(NumericValue::pi());
      return env.constants.get(e->name);
    case ExprKind::kVar:
      return lookup_value(env, e->name);
    case ExprKind::kUnit:
      return env.db->lookup_unit(e->name);
    case ExprKind::kStdUnit:
      if (!e->kind_ref) {
        throw Error(ErrorCode::kUnsupportedNode,
                    "StandardUnit _ without a resolved kind");
      }
      return Quantity(1, e->kind_ref->dim);
    case ExprKind::kPrefix:
      return env.db->apply_prefix(e->name, eval_numeric(a[0], env));
    case ExprKind::kAdd:
      return q_add(eval_numeric(a[0], env), eval_numeric(a[1], env));
    case ExprKind::kSub:
      return q_sub(eval_numeric(a[0], env), eval_numeric(a[1], env));
    case ExprKind::kMul:
      return q_mul(eval_numeric(a[0], env), eval_numeric(a[1], env));
    case ExprKind::kDiv:
      return q_div(eval_numeric(a[0], env), eval_numeric(a[1], env));
    case ExprKind::kNeg:
      return q_neg(eval_numeric(a[0], env));
    case ExprKind::kSMul:
      return q_smul(scalar(eval_numeric(a[0], env)), eval_numeric(a[1], env));
    case ExprKind::kPow:
      return q_pow(eval_numeric(a[0], env), e->number);
    case ExprKind::kRPow: {
      NumericValue base = scalar(eval_numeric(a[0], env));
      NumericValue exp = scalar(eval_numeric(a[1], env));
      if (exp.is_exact()) {
        return Quantity::dimensionless(base.pow_rational(exp.exact()));
      }
      return Quantity::dimensionless(base.pow_real(exp));
    }
    case ExprKind::kCast:
      return q_cast(eval_numeric(a[0], env), e->kind_ref->dim);
    case ExprKind::kVal:
      return Quantity::dimensionless(q_val(eval_numeric(a[0], env)));
    case ExprKind::kNorm:
      return Quantity::dimensionless(q_norm(eval_numeric(a[0], env)));
    case ExprKind::kFn:
      return Quantity::dimensionless(
          scalar(eval_numeric(a[0], env)).apply(e->fn));
    case ExprKind::kApply: {
      auto it = env.functions.find(e->name);
      if (it == env.functions.end()) {
        throw Error(ErrorCode::kUnboundVariable,
                    "function '" + e->name + "' has no definition");
      }
      Quantity arg = eval_numeric(a[0], env);
      EvalEnv inner = env;
      inner.values[it->second.param] = arg;
      return eval_numeric(it->second.body, inner);
    }
    case ExprKind::kDeriv:
      throw Error(ErrorCode::kUnsupportedNode,
                  "derivatives cannot be evaluated numerically");
  }
  throw Error(ErrorCode::kUnsupportedNode, "unknown node");
}

PropValue eval_prop(const PropPtr& p, const EvalEnv& env) {
  switch (p->kind) {
    case PropKind::kEq:
    case PropKind::kNe:
    case PropKind::kLe:
    case PropKind::kLt:
      return compare_prop(*p, env);
    case PropKind::kAnd: {
      PropValue l = eval_prop(p->left, env);
      if (!l.holds) return l;
      PropValue r = eval_prop(p->right, env);
      return {r.holds, l.approx || r.approx};
    }
    case PropKind::kOr: {
      PropValue l = eval_prop(p->left, env);
      if (l.holds) return l;
      PropValue r = eval_prop(p->right, env);
      return {r.holds, l.approx || r.approx};
    }
    case PropKind::kImplies: {
      PropValue l = eval_prop(p->left, env);
      if (!l.holds) return {true, l.approx};
      PropValue r = eval_prop(p->right, env);
      return {r.holds, l.approx || r.approx};
    }
    case PropKind::kForallFinite: {
      PropValue out{true, false};
      for (const auto& v : p->values) {
        EvalEnv inner = env;
        inner.values[p->var] = eval_numeric(v, env);
        PropValue r = eval_prop(p->left, inner);
        out.approx = out.approx || r.approx;
        if (!r.holds) return {false, out.approx};
      }
      return out;
    }
    case PropKind::kForallFn:
      throw Error(ErrorCode::kUnsupportedNode,
                  "a quantifier over a kind cannot be decided numerically");
  }
  throw Error(ErrorCode::kUnsupportedNode, "unknown proposition");
}

std::optional<Definition> as_definition(const std::string& hyp_name,
                                        const PropPtr& p,
                                        const Statement* s) {
  Definition d;
  d.hyp = hyp_name;
  if (p->kind == PropKind::kForallFn) {
    const PropPtr& body = p->left;
    if (body->kind != PropKind::kEq || body->lhs->kind != ExprKind::kApply) {
      return std::nullopt;
    }
    const ExprPtr& arg = body->lhs->args[0];
    if (arg->kind != ExprKind::kVar || arg->name != p->var) return std::nullopt;
    if (mentions(body->rhs, body->lhs->name)) return std::nullopt;
    d.kind = Definition::Kind::kFunction;
    d.var = d.symbol = body->lhs->name;
    d.param = p->var;
    d.rhs = body->rhs;
    for (const auto& n : free_vars(d.rhs)) {
      if (n != d.param) d.deps.push_back(n);
    }
    return d;
  }
  if (p->kind != PropKind::kEq) return std::nullopt;
  const ExprPtr& lhs = p->lhs;
  if (lhs->kind == ExprKind::kVar) {
    d.kind = Definition::Kind::kVar;
    d.var = lhs->name;
  } else if (lhs->kind == ExprKind::kVal &&
             lhs->args[0]->kind == ExprKind::kVar) {
    d.kind = Definition::Kind::kValOf;
    d.var = lhs->args[0]->name;
  } else if (lhs->kind == ExprKind::kApply) {
    if (mentions(lhs->args[0], lhs->name)) return std::nullopt;
    d.kind = Definition::Kind::kPoint;
    d.var = lhs->name;
    d.point = lhs;
  } else {
    return std::nullopt;
  }
  if (mentions(p->rhs, d.var)) return std::nullopt;
  if (d.kind != Definition::Kind::kPoint && s) {
    const Decl* decl = s->find_decl(d.var);
    if (decl && decl->is_function()) return std::nullopt;
  }
  d.symbol = d.kind == Definition::Kind::kPoint ? print_expr(lhs) : d.var;
  d.rhs = p->rhs;
  d.deps = free_vars(d.rhs);
  return d;
}

Orientation orient_definitions(const std::vector<Hypothesis>& hyps,
                               const Statement* s, bool demote_cyclic) {
  std::vector<Definition> candidates;
  std::set<std::string> function_defined;
  for (const auto& h : hyps) {
    if (auto d = as_definition(h.name, h.prop, s)) {
      if (d->kind == Definition::Kind::kFunction) function_defined.insert(d->var);
      candidates.push_back(std::move(*d));
    }
  }
  Orientation out;
  std::map<std::string, std::vector<std::string>> edges;  // symbol -> deps
  std::set<std::string> defined;
  auto reaches = [&](const std::vector<std::string>& from,
                     const std::string& target) {
    std::vector<std::string> stack = from;
    std::set<std::string> seen;
    while (!stack.empty()) {
      std::string n = stack.back();
      stack.pop_back();
      if (n == target) return true;
      if (!seen.insert(n).second) continue;
      auto it = edges.find(n);
      if (it != edges.end()) {
        stack.insert(stack.end(), it->second.begin(), it->second.end());
      }
    }
    return false;
  };
  std::vector<Definition> accepted;
  for (auto& d : candidates) {
    if (d.kind == Definition::Kind::kPoint && function_defined.count(d.var)) {
      continue;
    }
    if (defined.count(d.symbol)) continue;
    if (d.kind != Definition::Kind::kPoint && reaches(d.deps, d.var)) {
      if (!demote_cyclic) {
        throw Error(ErrorCode::kCyclicDefinitions,
                    "hypothesis '" + d.hyp + "' closes a dependency cycle on '" +
                        d.var + "'");
      }
      out.demoted.push_back(d.hyp);
      continue;
    }
    defined.insert(d.symbol);
    if (d.kind != Definition::Kind::kPoint) edges[d.var] = d.deps;
    accepted.push_back(std::move(d));
  }
  // Dependency order; ties keep hypothesis order.
  std::vector<bool> placed(accepted.size(), false);
  std::set<std::string> done;
  while (out.defs.size() < accepted.size()) {
    bool progress = false;
    for (std::size_t i = 0; i < accepted.size(); ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (const auto& dep : accepted[i].deps) {
        if (!done.count(dep) && edges.count(dep) && dep != accepted[i].var) {
          ready = false;
          break;
        }
      }
      if (!ready) continue;
      placed[i] = true;
      if (accepted[i].kind != Definition::Kind::kPoint) {
        done.insert(accepted[i].var);
      }
      out.defs.push_back(accepted[i]);
      progress = true;
      break;
    }
    if (!progress) break;  // unreachable: the graph is acyclic
  }
  return out;
}

ConstantTable constants_for(const Statement& s, const ConstantTable& base) {
  ConstantTable table = base;
  for (const auto& [name, value] : s.meta.constants) {
    table.override_value(name, value);
  }
  return table;
}

EvalEnv definitional_env(const Statement& s,
                         std::map<std::string, Quantity> seed,
                         ConstantTable constants) {
  EvalEnv env;
  env.values = std::move(seed);
  env.constants = std::move(constants);
  Orientation o = orient_definitions(s.hyps, &s);
  for (const auto& d : o.defs) {
    if (d.kind == Definition::Kind::kFunction) {
      env.functions[d.var] = FunctionDef{d.param, d.rhs};
    }
  }
  for (const auto& d : o.defs) {
    if (env.values.count(d.var)) continue;
    try {
      switch (d.kind) {
        case Definition::Kind::kVar:
          env.values[d.var] = eval_numeric(d.rhs, env);
          break;
        case Definition::Kind::kValOf: {
          const Decl* decl = s.find_decl(d.var);
          Dimension dim = decl ? decl->kind.dim : Dimension();
          env.values[d.var] = Quantity(eval_numeric(d.rhs, env).val(), dim);
          break;
        }
        default:
          break;
      }
    } catch (const Error&) {
      // Leaves the variable unbound; dependents fail the same way.
    }
  }
  return env;
}

}  // namespace physk
