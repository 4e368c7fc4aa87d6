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

#include "physk/prover.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "physk/error.h"
#include "physk/evaluator.h"
#include "physk/lang.h"
#include "physk/rewrite.h"
#include "physk/ring.h"

namespace physk {
namespace {

// ---- script text -----------------------------------------------------------

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(ErrorCode::kMalformedScript, msg);
}

// Splits off the first whitespace-delimited word.
std::string take_word(std::string& rest) {
  rest = trim(rest);
  std::size_t end = rest.find_first_of(" \t");
  std::string word = rest.substr(0, end);
  rest = end == std::string::npos ? "" : trim(rest.substr(end));
  return word;
}

// Text between an opening bracket at rest[0] and its partner.
std::string take_group(std::string& rest, char open, char close,
                       const std::string& where) {
  if (rest.empty() || rest[0] != open) {
    malformed(where + ": expected '" + std::string(1, open) + "'");
  }
  int depth = 0;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] == open) ++depth;
    if (rest[i] == close && --depth == 0) {
      std::string inner = trim(rest.substr(1, i - 1));
      rest = trim(rest.substr(i + 1));
      return inner;
    }
  }
  malformed(where + ": unbalanced '" + std::string(1, open) + "'");
}

std::string take_as(std::string& rest, const std::string& where) {
  if (rest.empty()) return "";
  if (take_word(rest) != "as") malformed(where + ": expected 'as NAME'");
  std::string name = take_word(rest);
  if (name.empty() || !rest.empty()) malformed(where + ": expected one name");
  return name;
}

// Comma-separated items at bracket depth 0.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

// ---- goals -----------------------------------------------------------------

struct Goal {
  std::vector<Hypothesis> hyps;
  PropPtr target;
  std::map<std::string, KindRef> bound;

  const Hypothesis* find(const std::string& name) const {
    for (const auto& h : hyps) {
      if (h.name == name) return &h;
    }
    return nullptr;
  }
};

std::string render_goal(const Goal& g) {
  std::string out;
  for (const auto& [name, kind] : g.bound) {
    out += name + " : " + kind.text + "\n";
  }
  for (const auto& h : g.hyps) out += h.name + " := " + print_prop(h.prop) + "\n";
  out += "⊢ " + print_prop(g.target);
  return out;
}

void flatten_and(const PropPtr& p, std::vector<PropPtr>& out) {
  if (p->kind == PropKind::kAnd) {
    flatten_and(p->left, out);
    flatten_and(p->right, out);
  } else {
    out.push_back(p);
  }
}

bool is_zero_expr(const ExprPtr& e) {
  if (e->kind == ExprKind::kNum) return e->number == 0;
  if (e->kind == ExprKind::kSMul) return is_zero_expr(e->args[0]);
  return false;
}

// Expressions known to be nonzero from `0 < e`, `e < 0` and `e ≠ 0`.
std::vector<ExprPtr> nonzero_facts(const std::vector<Hypothesis>& hyps) {
  std::vector<ExprPtr> out;
  for (const auto& h : hyps) {
    std::vector<PropPtr> parts;
    flatten_and(h.prop, parts);
    for (const auto& p : parts) {
      if (p->kind == PropKind::kLt || p->kind == PropKind::kNe) {
        if (is_zero_expr(p->lhs)) {
          out.push_back(p->rhs);
        } else if (is_zero_expr(p->rhs)) {
          out.push_back(p->lhs);
        } else if (p->kind == PropKind::kNe) {
          out.push_back(make_binary(ExprKind::kSub, p->lhs, p->rhs));
        }
      }
    }
  }
  return out;
}

// Removes from p every factor shared with a known-nonzero polynomial.
Polynomial strip_nonzero(Polynomial p, const std::vector<Polynomial>& facts) {
  for (const auto& f : facts) {
    if (f.is_constant()) continue;
    for (;;) {
      Polynomial g = poly_gcd(p, f);
      if (g.is_constant()) break;
      p = *p.divide_exact(g);
    }
  }
  return p;
}

class Engine {
 public:
  Engine(const Statement& s, const ProverConfig& config, const UnitDb& db,
         Verdict& verdict)
      : s_(s),
        config_(config),
        db_(db),
        verdict_(verdict),
        constants_(constants_for(s, config.constants)) {
    goals_.push_back(Goal{s.hyps, s.goal, {}});
  }

  bool done() const { return goals_.empty(); }
  bool refuted() const { return refuted_; }
  const Goal& current() const { return goals_.front(); }
  std::size_t open_goals() const { return goals_.size(); }

  std::string fresh_name(const std::string& base) const {
    auto used = [&](const std::string& n) {
      return current().find(n) != nullptr || s_.find_hyp(n) != nullptr;
    };
    if (!used(base)) return base;
    for (int i = 2;; ++i) {
      std::string n = base + "_" + std::to_string(i);
      if (!used(n)) return n;
    }
  }

  /// Applies one step to the first goal. Returns a failure message and
  /// leaves the state untouched, or nullopt on success.
  std::optional<std::string> apply(const Step& step) {
    if (goals_.empty()) malformed("no goal left for '" + print_step(step) + "'");
    switch (step.kind) {
      case StepKind::kSplit:
        return split();
      case StepKind::kIntro:
        return intro(step);
      case StepKind::kCaseSplit:
        return cases(step);
      case StepKind::kSubst:
        return subst(step);
      case StepKind::kInstantiate:
        return instantiate(step);
      case StepKind::kPolyMatch:
        return polymatch(step);
      case StepKind::kRingCheck:
        return ring();
      case StepKind::kNumericCheck:
        return numeric();
      case StepKind::kExactHyp:
        return exact(step);
    }
    return "unknown step";
  }

 private:
  Goal& goal() { return goals_.front(); }

  void close() { goals_.erase(goals_.begin()); }

  const Hypothesis& need_hyp(const std::string& name) {
    const Hypothesis* h = goal().find(name);
    if (!h) malformed("no hypothesis named '" + name + "' in the current goal");
    return *h;
  }

  ExprScope expr_scope() const {
    return ExprScope{&s_, current().bound};
  }

  DimScope dim_scope() const {
    DimScope scope{&s_, {}};
    for (const auto& [n, k] : current().bound) scope.bound[n] = k.dim;
    return scope;
  }

  ExprPtr parse_arg(const std::string& text, const Dimension& expected) {
    ExprPtr e;
    try {
      e = parse_expr(text, expr_scope(), db_);
    } catch (const Error& err) {
      malformed("cannot parse '" + text + "': " + err.what());
    }
    return elaborate(e, expected, dim_scope(), db_);
  }

  std::optional<std::string> split() {
    Goal& g = goal();
    if (g.target->kind != PropKind::kAnd) return "goal is not a conjunction";
    Goal a = g;
    Goal b = g;
    a.target = g.target->left;
    b.target = g.target->right;
    goals_.erase(goals_.begin());
    goals_.insert(goals_.begin(), {std::move(a), std::move(b)});
    return std::nullopt;
  }

  std::optional<std::string> intro(const Step& step) {
    Goal& g = goal();
    const PropPtr& t = g.target;
    if (t->kind == PropKind::kImplies) {
      std::string name = step.as.empty() ? fresh_name("h_intro") : step.as;
      if (g.find(name)) return "name '" + name + "' is already in use";
      g.hyps.push_back(Hypothesis{name, t->left, {}});
      g.target = t->right;
      return std::nullopt;
    }
    if (t->kind == PropKind::kForallFn) {
      std::string var = step.as.empty() ? t->var : step.as;
      PropPtr body = t->left;
      if (var != t->var) {
        body = apply_rewrite(body, Rewrite::var(
                                       t->var, make_named(ExprKind::kVar, var)));
      }
      g.bound[var] = t->var_kind ? *t->var_kind : KindRef{"Real", Dimension()};
      g.target = body;
      return std::nullopt;
    }
    if (t->kind == PropKind::kForallFinite) {
      return "finite quantifier: use cases";
    }
    return "nothing to introduce";
  }

  std::optional<std::string> cases(const Step& step) {
    Goal& g = goal();
    const PropPtr& t = g.target;
    if (t->kind != PropKind::kForallFinite || t->var != step.target) {
      return "goal does not quantify '" + step.target + "' over a finite set";
    }
    std::vector<ExprPtr> values;
    for (const auto& text : split_top_level(step.arg)) {
      values.push_back(parse_arg(text, Dimension()));
    }
    auto covered = [](const std::vector<ExprPtr>& from,
                      const std::vector<ExprPtr>& in) {
      return std::all_of(from.begin(), from.end(), [&](const ExprPtr& v) {
        return std::any_of(in.begin(), in.end(),
                           [&](const ExprPtr& w) { return ast_eq(v, w); });
      });
    };
    if (!covered(t->values, values) || !covered(values, t->values)) {
      return "case values do not match the quantifier's domain";
    }
    std::vector<Goal> branches;
    for (const auto& v : values) {
      Goal c = g;
      c.target = apply_rewrite(t->left, Rewrite::var(t->var, v));
      branches.push_back(std::move(c));
    }
    goals_.erase(goals_.begin());
    goals_.insert(goals_.begin(), branches.begin(), branches.end());
    return std::nullopt;
  }

  std::optional<std::string> subst(const Step& step) {
    const Hypothesis& h = need_hyp(step.target);
    std::optional<Definition> d = as_definition(h.name, h.prop, &s_);
    if (!d) return "'" + h.name + "' is not a definition";
    Rewrite rw;
    switch (d->kind) {
      case Definition::Kind::kVar:
        rw = Rewrite::var(d->var, d->rhs);
        break;
      case Definition::Kind::kValOf: {
        Dimension dim;
        auto it = goal().bound.find(d->var);
        if (it != goal().bound.end()) {
          dim = it->second.dim;
        } else if (const Decl* decl = s_.find_decl(d->var)) {
          dim = decl->kind.dim;
        }
        rw = Rewrite::var(d->var,
                          make_binary(ExprKind::kSMul, d->rhs,
                                      make_std_unit(kind_of_dimension(dim))));
        break;
      }
      case Definition::Kind::kPoint:
        rw = Rewrite::at_point(d->point, d->rhs);
        break;
      case Definition::Kind::kFunction:
        rw = Rewrite::function(d->var, d->param, d->rhs);
        break;
    }
    Goal& g = goal();
    std::vector<Hypothesis> rest;
    for (const auto& other : g.hyps) {
      if (other.name == step.target) continue;
      rest.push_back(Hypothesis{other.name, apply_rewrite(other.prop, rw),
                                other.span});
    }
    g.hyps = std::move(rest);
    g.target = apply_rewrite(g.target, rw);
    return std::nullopt;
  }

  std::optional<std::string> instantiate(const Step& step) {
    const Hypothesis& h = need_hyp(step.target);
    if (h.prop->kind != PropKind::kForallFn) {
      return "'" + h.name + "' is not a universal statement";
    }
    Dimension dim = h.prop->var_kind ? h.prop->var_kind->dim : Dimension();
    ExprPtr arg;
    try {
      arg = parse_arg(step.arg, dim);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::kMalformedScript) throw;
      return std::string("argument rejected: ") + err.what();
    }
    std::string name = step.as.empty() ? fresh_name(h.name + "_inst") : step.as;
    if (goal().find(name)) return "name '" + name + "' is already in use";
    PropPtr body = apply_rewrite(h.prop->left, Rewrite::var(h.prop->var, arg));
    goal().hyps.push_back(Hypothesis{name, body, {}});
    return std::nullopt;
  }

  std::optional<std::string> polymatch(const Step& step) {
    const Hypothesis& h = need_hyp(step.target);
    std::vector<Hypothesis> derived;
    try {
      derived = poly_coeff_eqs(h, step.arg, goal().hyps);
    } catch (const Error& err) {
      return err.what();
    }
    for (const auto& d : derived) {
      if (goal().find(d.name)) return "'" + d.name + "' already exists";
    }
    for (auto& d : derived) goal().hyps.push_back(std::move(d));
    return std::nullopt;
  }

  std::optional<std::string> exact(const Step& step) {
    const Hypothesis& h = need_hyp(step.target);
    const PropPtr& t = goal().target;
    bool match = ast_eq(h.prop, t);
    if (!match && t->kind == PropKind::kEq && h.prop->kind == PropKind::kEq) {
      match = ast_eq(h.prop->lhs, t->rhs) && ast_eq(h.prop->rhs, t->lhs);
    }
    if (!match) return "'" + h.name + "' does not match the goal";
    close();
    return std::nullopt;
  }

  bool function_var(const ExprPtr& e) const {
    if (e->kind != ExprKind::kVar || current().bound.count(e->name)) {
      return false;
    }
    const Decl* d = s_.find_decl(e->name);
    return d && d->is_function();
  }

  void record_side_conditions(RingContext& ctx,
                              const std::vector<Polynomial>& denominators,
                              const std::vector<Polynomial>& facts) {
    for (const auto& d : denominators) {
      SideCondition sc;
      sc.text = d.to_string(ctx.names()) + " ≠ 0";
      sc.discharged = strip_nonzero(d, facts).is_constant();
      auto& list = verdict_.side_conditions;
      bool seen = std::any_of(list.begin(), list.end(), [&](const auto& x) {
        return x.text == sc.text;
      });
      if (!seen) list.push_back(sc);
    }
  }

  std::optional<std::string> ring() {
    const Goal& g = goal();
    const PropPtr& t = g.target;
    if (t->kind != PropKind::kEq) return "ring closes equations only";
    if (function_var(t->lhs) || function_var(t->rhs)) {
      return "ring does not compare function variables";
    }
    std::vector<ExprPtr> facts = nonzero_facts(g.hyps);
    std::vector<PropPtr> equations;
    for (const auto& h : g.hyps) {
      std::vector<PropPtr> parts;
      flatten_and(h.prop, parts);
      for (const auto& p : parts) {
        if (p->kind == PropKind::kEq && !function_var(p->lhs) &&
            !function_var(p->rhs)) {
          equations.push_back(p);
        }
      }
    }
    std::string last_error;
    // Pure identity first, then modulo one equation at a time.
    for (std::size_t i = 0; i <= equations.size(); ++i) {
      const PropPtr* h = i == 0 ? nullptr : &equations[i - 1];
      std::vector<ExprPtr> exprs{t->lhs, t->rhs};
      if (h) {
        exprs.push_back((*h)->lhs);
        exprs.push_back((*h)->rhs);
      }
      exprs.insert(exprs.end(), facts.begin(), facts.end());
      try {
        RingContext ctx(exprs);
        Polynomial ng = (ctx.normalize(t->lhs) - ctx.normalize(t->rhs)).num();
        std::vector<Polynomial> goal_dens = ctx.denominators();
        std::vector<Polynomial> fact_polys;
        for (const auto& f : facts) {
          try {
            fact_polys.push_back(ctx.normalize(f).num());
          } catch (const Error&) {
          }
        }
        if (!h) {
          if (!ng.is_zero()) continue;
          record_side_conditions(ctx, goal_dens, fact_polys);
          close();
          return std::nullopt;
        }
        Polynomial nh = (ctx.normalize((*h)->lhs) - ctx.normalize((*h)->rhs)).num();
        if (nh.is_constant()) continue;
        nh = strip_nonzero(nh, fact_polys);
        if (nh.is_constant()) continue;
        if (!ng.divide_exact(nh)) continue;
        record_side_conditions(ctx, ctx.denominators(), fact_polys);
        close();
        return std::nullopt;
      } catch (const Error& err) {
        last_error = err.what();
      }
    }
    std::string msg = "not a ring identity, also modulo " +
                      std::to_string(equations.size()) + " hypothesis equations";
    if (!last_error.empty()) msg += " (" + last_error + ")";
    return msg;
  }

  EvalEnv closed_env() const {
    EvalEnv env;
    env.constants = constants_;
    env.db = &db_;
    env.numeric = config_.numeric;
    return env;
  }

  // Equal heads with exactly equal arguments, e.g. rpow(x, 1/3) twice.
  bool congruent(const ExprPtr& a, const ExprPtr& b, const EvalEnv& env) {
    bool same_head = a->kind == b->kind &&
                     ((a->kind == ExprKind::kFn && a->fn == b->fn) ||
                      a->kind == ExprKind::kRPow);
    if (!same_head) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i) {
      Quantity x = eval_numeric(a->args[i], env);
      Quantity y = eval_numeric(b->args[i], env);
      if (!x.val().is_exact() || !y.val().is_exact() ||
          !(x.dim() == y.dim()) || x.val().exact() != y.val().exact()) {
        return false;
      }
    }
    return true;
  }

  std::optional<std::string> numeric() {
    const PropPtr& t = goal().target;
    std::vector<std::string> free = free_vars(t);
    if (!free.empty()) {
      std::string names;
      for (const auto& n : free) names += (names.empty() ? "" : ", ") + n;
      return "goal still mentions " + names;
    }
    EvalEnv env = closed_env();
    PropValue r;
    try {
      if (t->kind == PropKind::kEq && congruent(t->lhs, t->rhs, env)) {
        verdict_.numeric_used = true;
        close();
        return std::nullopt;
      }
      r = eval_prop(t, env);
    } catch (const Error& err) {
      return std::string("evaluation failed: ") + err.what();
    }
    verdict_.numeric_used = true;
    if (r.holds) {
      verdict_.approx_decided = verdict_.approx_decided || r.approx;
      close();
      return std::nullopt;
    }
    if (confirm_refutation()) {
      refuted_ = true;
      return std::nullopt;
    }
    return "goal evaluates to false";
  }

  // A counterexample must satisfy every hypothesis of the statement and
  // falsify its goal, all under the definitional bindings.
  bool confirm_refutation() {
    EvalEnv env = definitional_env(s_, {}, constants_);
    env.db = &db_;
    env.numeric = config_.numeric;
    try {
      for (const auto& h : s_.hyps) {
        auto d = as_definition(h.name, h.prop, &s_);
        if (d && d->kind == Definition::Kind::kFunction) continue;
        if (!eval_prop(h.prop, env).holds) return false;
      }
      if (eval_prop(s_.goal, env).holds) return false;
    } catch (const Error&) {
      return false;
    }
    for (const auto& [name, q] : env.values) {
      verdict_.counterexample.emplace_back(name, q.to_string());
    }
    return true;
  }

  const Statement& s_;
  const ProverConfig& config_;
  const UnitDb& db_;
  Verdict& verdict_;
  ConstantTable constants_;
  std::vector<Goal> goals_;
  bool refuted_ = false;
};

void finish(Verdict& v, const Engine& eng) {
  if (eng.refuted()) {
    v.kind = VerdictKind::kRefuted;
  } else if (eng.done()) {
    v.kind = VerdictKind::kProved;
  } else {
    v.kind = VerdictKind::kUnknown;
    v.residual = render_goal(eng.current());
  }
}

bool dims_ok(const Statement& s, const UnitDb& db, Verdict& v) {
  v.dims = check_dimensions(s, db);
  if (v.dims.ok()) return true;
  v.kind = VerdictKind::kUnknown;
  v.message = "dimension check failed";
  v.residual = "⊢ " + print_prop(s.goal);
  return false;
}

}  // namespace

std::string print_step(const Step& step) {
  switch (step.kind) {
    case StepKind::kSplit:
      return "split";
    case StepKind::kIntro:
      return step.as.empty() ? "intro" : "intro as " + step.as;
    case StepKind::kCaseSplit:
      return "cases " + step.target + " {" + step.arg + "}";
    case StepKind::kSubst:
      return "subst " + step.target;
    case StepKind::kInstantiate:
      return "instantiate " + step.target + " (" + step.arg + ")" +
             (step.as.empty() ? "" : " as " + step.as);
    case StepKind::kPolyMatch:
      return "polymatch " + step.target + " " + step.arg;
    case StepKind::kRingCheck:
      return "ring";
    case StepKind::kNumericCheck:
      return "numeric";
    case StepKind::kExactHyp:
      return "exact " + step.target;
  }
  return "";
}

std::string print_script(const DerivationScript& script) {
  std::string out;
  for (const auto& s : script.steps) out += print_step(s) + "\n";
  return out;
}

DerivationScript parse_script(std::string_view text) {
  DerivationScript script;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string rest = trim(raw);
    if (rest.empty() || rest[0] == '#' || rest.rfind("--", 0) == 0) continue;
    std::string where = "line " + std::to_string(line_no);
    std::string word = take_word(rest);
    Step step;
    auto one_name = [&]() {
      std::string n = take_word(rest);
      if (n.empty() || !rest.empty()) malformed(where + ": expected one name");
      return n;
    };
    if (word == "split" || word == "ring" || word == "numeric") {
      if (!rest.empty()) malformed(where + ": '" + word + "' takes no argument");
      step.kind = word == "split"  ? StepKind::kSplit
                  : word == "ring" ? StepKind::kRingCheck
                                   : StepKind::kNumericCheck;
    } else if (word == "intro") {
      step.kind = StepKind::kIntro;
      step.as = take_as(rest, where);
    } else if (word == "cases") {
      step.kind = StepKind::kCaseSplit;
      step.target = take_word(rest);
      step.arg = take_group(rest, '{', '}', where);
      if (step.target.empty() || !rest.empty()) {
        malformed(where + ": expected 'cases VAR {values}'");
      }
    } else if (word == "subst" || word == "exact") {
      step.kind = word == "subst" ? StepKind::kSubst : StepKind::kExactHyp;
      step.target = one_name();
    } else if (word == "instantiate") {
      step.kind = StepKind::kInstantiate;
      step.target = take_word(rest);
      step.arg = take_group(rest, '(', ')', where);
      step.as = take_as(rest, where);
    } else if (word == "polymatch") {
      step.kind = StepKind::kPolyMatch;
      step.target = take_word(rest);
      step.arg = take_word(rest);
      if (step.target.empty() || step.arg.empty() || !rest.empty()) {
        malformed(where + ": expected 'polymatch HYP VAR'");
      }
    } else {
      malformed(where + ": unknown step '" + word + "'");
    }
    script.steps.push_back(std::move(step));
  }
  return script;
}

std::string_view verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kProved:
      return "proved";
    case VerdictKind::kRefuted:
      return "refuted";
    case VerdictKind::kUnknown:
      return "unknown";
  }
  return "unknown";
}

Verdict auto_prove(const Statement& raw, const ProverConfig& config,
                   const UnitDb& db) {
  Verdict v;
  if (!dims_ok(raw, db, v)) return v;
  Statement s = elaborate(raw, db);
  Engine eng(s, config, db, v);
  auto run = [&](const Step& step) {
    if (eng.apply(step)) return false;
    v.trace.steps.push_back(step);
    return true;
  };
  while (!eng.done() && !eng.refuted()) {
    const Goal& g = eng.current();
    const PropPtr t = g.target;
    Step step;
    switch (t->kind) {
      case PropKind::kAnd:
        step.kind = StepKind::kSplit;
        break;
      case PropKind::kImplies:
        step.kind = StepKind::kIntro;
        step.as = eng.fresh_name("h_intro");
        break;
      case PropKind::kForallFn:
        step.kind = StepKind::kIntro;
        break;
      case PropKind::kForallFinite:
        step.kind = StepKind::kCaseSplit;
        step.target = t->var;
        for (const auto& val : t->values) {
          step.arg += (step.arg.empty() ? "" : ", ") + print_expr(val);
        }
        break;
      default:
        step.kind = StepKind::kRingCheck;  // leaf marker
        break;
    }
    if (step.kind != StepKind::kRingCheck) {
      if (auto err = eng.apply(step)) {
        v.message = *err;
        break;
      }
      v.trace.steps.push_back(step);
      continue;
    }
    // Leaf goal.
    bool closed = false;
    for (const auto& h : g.hyps) {
      if (ast_eq(h.prop, t)) {
        Step ex{StepKind::kExactHyp, h.name, "", ""};
        closed = run(ex);
        break;
      }
    }
    if (closed) continue;
    std::vector<Step> matches;
    for (const auto& h : g.hyps) {
      const PropPtr& p = h.prop;
      if (p->kind != PropKind::kEq || p->lhs->kind != ExprKind::kVar ||
          p->rhs->kind != ExprKind::kVar) {
        continue;
      }
      const Decl* f = s.find_decl(p->lhs->name);
      if (!f || !f->is_function()) continue;
      for (const auto& d : g.hyps) {
        auto def = as_definition(d.name, d.prop, &s);
        if (def && def->kind == Definition::Kind::kFunction &&
            def->var == p->lhs->name) {
          matches.push_back(Step{StepKind::kPolyMatch, h.name, def->param, ""});
          break;
        }
      }
    }
    for (const auto& m : matches) run(m);
    Orientation o = orient_definitions(eng.current().hyps, &s,
                                       config.demote_cyclic_definitions);
    for (const auto& d : o.defs) {
      run(Step{StepKind::kSubst, d.hyp, "", ""});
    }
    Step check;
    check.kind = free_vars(eng.current().target).empty()
                     ? StepKind::kNumericCheck
                     : StepKind::kRingCheck;
    if (auto err = eng.apply(check)) {
      v.message = *err;
      break;
    }
    v.trace.steps.push_back(check);
  }
  finish(v, eng);
  return v;
}

Verdict check_derivation(const Statement& raw, const DerivationScript& script,
                         const ProverConfig& config, const UnitDb& db) {
  Verdict v;
  if (!dims_ok(raw, db, v)) return v;
  Statement s = elaborate(raw, db);
  Engine eng(s, config, db, v);
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const Step& step = script.steps[i];
    if (eng.done()) {
      malformed("step " + std::to_string(i + 1) + " '" + print_step(step) +
                "' follows a finished proof");
    }
    if (auto err = eng.apply(step)) {
      v.kind = VerdictKind::kUnknown;
      v.failed_step = i;
      v.message = "step " + std::to_string(i + 1) + " '" + print_step(step) +
                  "': " + *err;
      v.residual = render_goal(eng.current());
      return v;
    }
    v.trace.steps.push_back(step);
    if (eng.refuted()) break;
  }
  finish(v, eng);
  if (v.kind == VerdictKind::kUnknown) {
    v.message = std::to_string(eng.open_goals()) + " goal(s) left open";
  }
  return v;
}

}  // namespace physk
