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

#include "physk/soundness.h"

#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "physk/dimcheck.h"
#include "physk/error.h"
#include "physk/evaluator.h"
#include "physk/lang.h"
#include "physk/rewrite.h"
#include "physk/ring.h"

namespace physk {
namespace {

void flatten_and(const PropPtr& p, std::vector<PropPtr>& out) {
  if (p->kind == PropKind::kAnd) {
    flatten_and(p->left, out);
    flatten_and(p->right, out);
  } else {
    out.push_back(p);
  }
}

bool holds(const PropPtr& p, const EvalEnv& env) {
  try {
    return eval_prop(p, env).holds;
  } catch (const Error&) {
    return false;
  }
}

NumericValue residual(const PropPtr& eq, const EvalEnv& env) {
  return q_sub(eval_numeric(eq->lhs, env), eval_numeric(eq->rhs, env)).val();
}

// |v| small against `scale`; exact values must be exactly zero.
bool negligible(const NumericValue& v, const ApproxReal& scale) {
  if (v.is_exact()) return v.is_zero();
  return boost::multiprecision::abs(v.to_approx()) <= ApproxReal("1e-25") * scale;
}

ExprPtr literal(const BigRational& value, const Dimension& dim) {
  return make_binary(ExprKind::kSMul, make_num(value),
                     make_std_unit(kind_of_dimension(dim)));
}

class Fuzzer {
 public:
  Fuzzer(const Statement& s, const FuzzConfig& config,
         const ConstantTable& constants, const UnitDb& db)
      : s_(s), config_(config), constants_(constants), db_(db),
        rng_(config.seed) {
    Orientation o = orient_definitions(s.hyps, &s);
    std::set<std::string> defined;
    for (const auto& d : o.defs) {
      if (d.kind == Definition::Kind::kPoint) continue;
      by_construction_.insert(d.hyp);
      if (d.kind != Definition::Kind::kFunction) defined.insert(d.var);
    }
    for (const auto& d : s.decls) {
      if (!d.is_function() && !defined.count(d.name)) free_.push_back(&d);
    }
    for (const auto& h : s.hyps) {
      if (by_construction_.count(h.name)) continue;
      const PropPtr& p = h.prop;
      if (p->kind == PropKind::kEq && is_function(p->lhs) &&
          is_function(p->rhs)) {
        function_eqs_.emplace_back(p->lhs->name, p->rhs->name);
        add_coefficient_eqs(h, o);
        continue;
      }
      std::vector<PropPtr> parts;
      flatten_and(p, parts);
      for (const auto& part : parts) {
        checks_.push_back(part);
        if (part->kind == PropKind::kEq) repairs_.push_back(part);
      }
    }
  }

  FuzzReport run() {
    FuzzReport report;
    while (report.attempts < config_.max_attempts &&
           report.non_vacuous < config_.wanted) {
      std::size_t attempt = report.attempts++;
      try {
        one(attempt, report);
      } catch (const Error&) {
        // Division by zero and the like: a vacuous draw.
      }
    }
    return report;
  }

 private:
  bool is_function(const ExprPtr& e) const {
    if (e->kind != ExprKind::kVar) return false;
    const Decl* d = s_.find_decl(e->name);
    return d && d->is_function();
  }

  void add_coefficient_eqs(const Hypothesis& h, const Orientation& o) {
    for (const auto& d : o.defs) {
      if (d.kind == Definition::Kind::kFunction && d.var == h.prop->lhs->name) {
        try {
          for (const auto& c : poly_coeff_eqs(h, d.param, s_.hyps)) {
            repairs_.push_back(c.prop);
          }
        } catch (const Error&) {
        }
        return;
      }
    }
  }

  BigRational draw() {
    std::uniform_int_distribution<int> num(1, 60);
    std::uniform_int_distribution<int> den(1, 12);
    int n = num(rng_);
    int d = den(rng_);
    return BigRational(n, d);
  }

  EvalEnv build(const std::map<std::string, Quantity>& seed) const {
    EvalEnv env = definitional_env(s_, seed, constants_);
    env.db = &db_;
    return env;
  }

  // Solves `eq` for one free variable it depends on affinely, keeping the
  // result only if the guards, and every equation that held before, still
  // hold.
  bool repair(const PropPtr& eq, std::map<std::string, Quantity>& seed,
              std::vector<PropPtr> guards, const std::vector<PropPtr>& eqs) {
    EvalEnv before = build(seed);
    for (const auto& other : eqs) {
      if (other != eq && holds(other, before)) guards.push_back(other);
    }
    for (const Decl* d : free_) {
      Quantity saved = seed.at(d->name);
      auto at = [&](const NumericValue& v) {
        seed[d->name] = Quantity(v, d->kind.dim);
        return residual(eq, build(seed));
      };
      try {
        NumericValue v0 = saved.val();
        NumericValue r0 = at(v0);
        NumericValue r1 = at(v0 + NumericValue(1));
        NumericValue r2 = at(v0 + NumericValue(2));
        ApproxReal scale = boost::multiprecision::abs(r0.to_approx()) +
                           boost::multiprecision::abs(r1.to_approx()) +
                           boost::multiprecision::abs(r2.to_approx());
        NumericValue slope = r1 - r0;
        if (!negligible(r2 - NumericValue(2) * r1 + r0, scale) ||
            negligible(slope, scale)) {
          seed[d->name] = saved;
          continue;
        }
        seed[d->name] = Quantity(v0 - r0 / slope, d->kind.dim);
        EvalEnv env = build(seed);
        bool ok = holds(eq, env);
        for (const auto& g : guards) ok = ok && holds(g, env);
        if (ok) return true;
      } catch (const Error&) {
      }
      seed[d->name] = saved;
    }
    return false;
  }

  bool function_eqs_hold(const EvalEnv& env) {
    for (const auto& [f, g] : function_eqs_) {
      const Decl* fd = s_.find_decl(f);
      for (int i = 0; i < 3; ++i) {
        ExprPtr x = literal(draw(), fd->domain->dim);
        Quantity a = eval_numeric(make_call(ExprKind::kApply, f, x), env);
        Quantity b = eval_numeric(make_call(ExprKind::kApply, g, x), env);
        if (!q_equal(a, b, env.numeric)) return false;
      }
    }
    return true;
  }

  void one(std::size_t attempt, FuzzReport& report) {
    // Goal instance: finite quantifiers cycle, antecedents become
    // assumptions.
    PropPtr goal = s_.goal;
    std::vector<PropPtr> assumptions;
    for (;;) {
      if (goal->kind == PropKind::kForallFinite) {
        const ExprPtr& v = goal->values[attempt % goal->values.size()];
        goal = apply_rewrite(goal->left, Rewrite::var(goal->var, v));
      } else if (goal->kind == PropKind::kForallFn) {
        Dimension dim = goal->var_kind ? goal->var_kind->dim : Dimension();
        goal = apply_rewrite(goal->left,
                             Rewrite::var(goal->var, literal(draw(), dim)));
      } else if (goal->kind == PropKind::kImplies) {
        flatten_and(goal->left, assumptions);
        goal = goal->right;
      } else {
        break;
      }
    }
    std::map<std::string, Quantity> seed;
    for (const Decl* d : free_) seed[d->name] = Quantity(draw(), d->kind.dim);

    std::vector<PropPtr> eqs = repairs_;
    std::vector<PropPtr> guards;
    for (const auto& c : checks_) {
      if (c->kind != PropKind::kEq) guards.push_back(c);
    }
    for (const auto& a : assumptions) {
      if (a->kind == PropKind::kEq) {
        eqs.push_back(a);
      } else {
        guards.push_back(a);
      }
    }
    for (int pass = 0; pass < 3; ++pass) {
      bool changed = false;
      for (const auto& eq : eqs) {
        if (holds(eq, build(seed))) continue;
        changed = repair(eq, seed, guards, eqs) || changed;
      }
      if (!changed) break;
    }
    EvalEnv env = build(seed);
    for (const auto& c : checks_) {
      if (!holds(c, env)) return;
    }
    for (const auto& eq : eqs) {
      if (!holds(eq, env)) return;
    }
    for (const auto& a : assumptions) {
      if (!holds(a, env)) return;
    }
    if (!function_eqs_hold(env)) return;
    bool goal_holds = eval_prop(goal, env).holds;  // throws: vacuous draw
    ++report.non_vacuous;
    if (goal_holds) return;
    if (report.falsified++ == 0) {
      for (const auto& [name, q] : env.values) {
        report.first_failure += name + " = " + q.to_string() + "; ";
      }
    }
  }

  const Statement& s_;
  const FuzzConfig& config_;
  ConstantTable constants_;
  const UnitDb& db_;
  std::mt19937_64 rng_;
  std::set<std::string> by_construction_;
  std::vector<const Decl*> free_;
  std::vector<PropPtr> checks_;
  std::vector<PropPtr> repairs_;
  std::vector<std::pair<std::string, std::string>> function_eqs_;
};

}  // namespace

FuzzReport soundness_fuzz(const Statement& raw, const FuzzConfig& config,
                          const ConstantTable& constants, const UnitDb& db) {
  Statement s = elaborate(raw, db);
  return Fuzzer(s, config, constants_for(s, constants), db).run();
}

}  // namespace physk
