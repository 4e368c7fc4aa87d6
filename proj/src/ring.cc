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

#include "physk/ring.h"

#include <algorithm>
#include <set>
#include <utility>

#include "physk/error.h"
#include "physk/evaluator.h"
#include "physk/lang.h"
#include "physk/rewrite.h"
#include "physk/unitdb.h"

namespace physk {
namespace {

namespace mp = boost::multiprecision;

bool is_integer(const BigRational& r) { return mp::denominator(r) == 1; }

// Content of p viewed as a polynomial in `var`: gcd of its coefficients.
Polynomial content(const Polynomial& p, std::size_t var) {
  Polynomial g(p.nvars());
  for (int k = p.degree(var); k >= 0; --k) {
    Polynomial c = p.coefficient(var, k);
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return p;
  Polynomial c = content(p, var);
  return *p.divide_exact(c);
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b,
                            std::size_t var) {
  Polynomial r = a;
  int db = b.degree(var);
  Polynomial lb = b.coefficient(var, db);
  while (!r.is_zero() && r.degree(var) >= db) {
    int dr = r.degree(var);
    Polynomial lr = r.coefficient(var, dr);
    Polynomial shift = Polynomial::variable(a.nvars(), var).pow(dr - db);
    r = lb * r - lr * shift * b;
  }
  return r;
}

std::string monomial_text(const Polynomial::Monomial& m,
                          const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m[i] != 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

// ---- Polynomial ------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t nvars, const BigRational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  Polynomial p(nvars);
  Monomial m(nvars, 0);
  m[index] = 1;
  p.add_term(m, 1);
  return p;
}

void Polynomial::add_term(const Monomial& m, const BigRational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Monomial& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

BigRational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_.begin()->second;
}

int Polynomial::degree(std::size_t var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

Polynomial Polynomial::coefficient(std::size_t var, int power) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] != power) continue;
    Monomial k = m;
    k[var] = 0;
    out.add_term(k, c);
  }
  return out;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Polynomial::Monomial m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::scaled(const BigRational& c) const {
  Polynomial out(nvars_);
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(1 / leading_coefficient());
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) {
    throw Error(ErrorCode::kDivisionByZero, "polynomial division by zero");
  }
  Polynomial q(nvars_);
  Polynomial r = *this;
  const Monomial& ld = d.leading_monomial();
  const BigRational& lc = d.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    Monomial t(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
      t[i] = lr[i] - ld[i];
      if (t[i] < 0) return std::nullopt;
    }
    Polynomial term(nvars_);
    term.add_term(t, r.leading_coefficient() / lc);
    q = q + term;
    r = r - term * d;
  }
  return q;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono = monomial_text(m, names);
    BigRational mag = c < 0 ? BigRational(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mono.empty()) {
      out += physk::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += physk::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  std::size_t n = a.nvars();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(n, 1);
  std::size_t var = n;
  for (std::size_t i = 0; i < n && var == n; ++i) {
    if (a.degree(i) > 0 || b.degree(i) > 0) var = i;
  }
  if (a.degree(var) == 0) return poly_gcd(a, content(b, var));
  if (b.degree(var) == 0) return poly_gcd(content(a, var), b);
  Polynomial ca = content(a, var);
  Polynomial cb = content(b, var);
  Polynomial c = poly_gcd(ca, cb);
  Polynomial r0 = *a.divide_exact(ca);
  Polynomial r1 = *b.divide_exact(cb);
  if (r0.degree(var) < r1.degree(var)) std::swap(r0, r1);
  while (!r1.is_zero() && r1.degree(var) > 0) {
    Polynomial r = pseudo_remainder(r0, r1, var);
    r0 = std::move(r1);
    r1 = r.is_zero() ? r : primitive_part(r, var);
  }
  Polynomial g = r1.is_zero() ? primitive_part(r0, var)
                              : Polynomial::constant(n, 1);
  return (c * g).monic();
}

// ---- RationalFunction ------------------------------------------------------

RationalFunction::RationalFunction(std::size_t nvars)
    : num_(nvars), den_(Polynomial::constant(nvars, 1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw Error(ErrorCode::kDivisionByZero, "division by the zero function");
  }
  std::size_t n = den_.nvars();
  if (num_.is_zero()) {
    den_ = Polynomial::constant(n, 1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  BigRational lc = den_.leading_coefficient();
  if (lc != 1) {
    num_ = num_.scaled(1 / lc);
    den_ = den_.scaled(1 / lc);
  }
}

RationalFunction RationalFunction::constant(std::size_t nvars,
                                            const BigRational& c) {
  return RationalFunction(Polynomial::constant(nvars, c),
                          Polynomial::constant(nvars, 1));
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -num_;
  return out;
}

RationalFunction operator+(const RationalFunction& a,
                           const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a,
                           const RationalFunction& b) {
  return a + (-b);
}

RationalFunction operator*(const RationalFunction& a,
                           const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a,
                           const RationalFunction& b) {
  if (b.is_zero()) {
    throw Error(ErrorCode::kDivisionByZero, "division by the zero function");
  }
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::pow(long long n) const {
  if (n >= 0) {
    return RationalFunction(num_.pow(static_cast<unsigned>(n)),
                            den_.pow(static_cast<unsigned>(n)));
  }
  if (is_zero()) {
    throw Error(ErrorCode::kDivisionByZero, "zero raised to a negative power");
  }
  auto m = static_cast<unsigned>(-n);
  return RationalFunction(den_.pow(m), num_.pow(m));
}

std::string RationalFunction::to_string(
    const std::vector<std::string>& names) const {
  std::string n = num_.to_string(names);
  if (den_.is_constant()) return n;
  return "(" + n + ") / (" + den_.to_string(names) + ")";
}

// ---- RingContext -----------------------------------------------------------

std::optional<std::string> ring_atom_key(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::kVar:
    case ExprKind::kConst:
      return e->name;
    case ExprKind::kPow:
      if (is_integer(e->number)) return std::nullopt;
      return print_expr(e);
    case ExprKind::kRPow:
    case ExprKind::kFn:
    case ExprKind::kNorm:
    case ExprKind::kApply:
    case ExprKind::kDeriv:
      return print_expr(e);
    default:
      return std::nullopt;
  }
}

RingContext::RingContext(const std::vector<ExprPtr>& exprs) {
  for (const auto& e : exprs) collect(e);
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  for (std::size_t i = 0; i < atoms_.size(); ++i) index_[atoms_[i]] = i;
  names_ = atoms_;
  reps_.resize(atoms_.size());
  // Representatives are filled by a second walk.
  std::vector<ExprPtr> stack = exprs;
  while (!stack.empty()) {
    ExprPtr e = stack.back();
    stack.pop_back();
    if (auto key = ring_atom_key(e)) {
      std::size_t i = index_.at(*key);
      if (reps_[i]) continue;
      bool dimensionless = e->kind == ExprKind::kFn ||
                           e->kind == ExprKind::kRPow ||
                           e->kind == ExprKind::kNorm ||
                           (e->kind == ExprKind::kConst && e->name == "π");
      reps_[i] = dimensionless ? e : make_unary(ExprKind::kVal, e);
      continue;
    }
    stack.insert(stack.end(), e->args.begin(), e->args.end());
  }
}

void RingContext::collect(const ExprPtr& e) {
  if (auto key = ring_atom_key(e)) {
    atoms_.push_back(*key);
    return;
  }
  for (const auto& a : e->args) collect(a);
}

std::optional<std::size_t> RingContext::index_of(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void RingContext::note_denominator(const Polynomial& p) {
  if (p.is_constant()) return;
  Polynomial m = p.monic();
  for (const auto& d : denominators_) {
    if (d == m) return;
  }
  denominators_.push_back(m);
}

RationalFunction RingContext::normalize(const ExprPtr& e) {
  std::size_t n = atoms_.size();
  if (auto key = ring_atom_key(e)) {
    auto it = index_.find(*key);
    if (it == index_.end()) {
      throw Error(ErrorCode::kUnsupportedNode,
                  "subterm '" + *key + "' is outside this ring context");
    }
    return RationalFunction(Polynomial::variable(n, it->second),
                            Polynomial::constant(n, 1));
  }
  const auto& a = e->args;
  switch (e->kind) {
    case ExprKind::kNum:
      return RationalFunction::constant(n, e->number);
    case ExprKind::kUnit:
      return RationalFunction::constant(
          n, UnitDb::standard().find_unit(e->name)->scale);
    case ExprKind::kStdUnit:
      return RationalFunction::constant(n, 1);
    case ExprKind::kPrefix:
      return RationalFunction::constant(
                 n, UnitDb::standard().find_prefix(e->name)->factor()) *
             normalize(a[0]);
    case ExprKind::kAdd:
      return normalize(a[0]) + normalize(a[1]);
    case ExprKind::kSub:
      return normalize(a[0]) - normalize(a[1]);
    case ExprKind::kMul:
    case ExprKind::kSMul:
      return normalize(a[0]) * normalize(a[1]);
    case ExprKind::kDiv: {
      RationalFunction num = normalize(a[0]);
      RationalFunction den = normalize(a[1]);
      if (den.is_zero()) {
        throw Error(ErrorCode::kDivisionByZero,
                    "division by zero in '" + print_expr(e) + "'");
      }
      note_denominator(den.num());
      return num / den;
    }
    case ExprKind::kNeg:
      return -normalize(a[0]);
    case ExprKind::kPow: {
      RationalFunction base = normalize(a[0]);
      long long k = static_cast<long long>(mp::numerator(e->number));
      if (k < 0) note_denominator(base.num());
      return base.pow(k);
    }
    case ExprKind::kCast:
    case ExprKind::kVal:
      return normalize(a[0]);
    default:
      break;
  }
  throw Error(ErrorCode::kUnsupportedNode,
              "cannot normalize '" + print_expr(e) + "'");
}

ExprPtr RingContext::to_expr(const Polynomial& p) const {
  if (p.is_zero()) return make_num(0);
  ExprPtr out;
  for (const auto& [m, c] : p.terms()) {
    ExprPtr product;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      ExprPtr f = m[i] == 1 ? reps_[i] : make_pow(reps_[i], m[i]);
      product = product ? make_binary(ExprKind::kMul, product, f) : f;
    }
    BigRational mag = c < 0 ? BigRational(-c) : c;
    ExprPtr term;
    if (!product) {
      term = make_num(mag);
    } else if (mag == 1) {
      term = product;
    } else {
      term = make_binary(ExprKind::kMul, make_num(mag), product);
    }
    if (!out) {
      out = c < 0 ? make_unary(ExprKind::kNeg, term) : term;
    } else {
      out = make_binary(c < 0 ? ExprKind::kSub : ExprKind::kAdd, out, term);
    }
  }
  return out;
}

ExprPtr RingContext::to_expr(const RationalFunction& f) const {
  ExprPtr num = to_expr(f.num());
  if (f.den().is_constant()) return num;
  return make_binary(ExprKind::kDiv, num, to_expr(f.den()));
}

// ---- ring_equal ------------------------------------------------------------

bool ring_equal(const ExprPtr& lhs, const ExprPtr& rhs,
                const std::map<std::string, ExprPtr>& substitutions,
                std::vector<std::string>* side_conditions) {
  ExprPtr l = lhs;
  ExprPtr r = rhs;
  for (std::size_t round = 0; round <= substitutions.size(); ++round) {
    bool any = false;
    for (const auto& [name, repl] : substitutions) {
      if (!mentions(l, name) && !mentions(r, name)) continue;
      any = true;
      l = apply_rewrite(l, Rewrite::var(name, repl));
      r = apply_rewrite(r, Rewrite::var(name, repl));
    }
    if (!any) break;
  }
  RingContext ctx({l, r});
  bool equal = ctx.normalize(l) == ctx.normalize(r);
  if (side_conditions) {
    for (const auto& d : ctx.denominators()) {
      side_conditions->push_back(d.to_string(ctx.names()) + " ≠ 0");
    }
  }
  return equal;
}

// ---- poly_coeff_eqs --------------------------------------------------------

std::vector<Hypothesis> poly_coeff_eqs(const Hypothesis& h,
                                       const std::string& t,
                                       const std::vector<Hypothesis>& context) {
  std::map<std::string, Definition> fns;
  for (const auto& c : context) {
    auto d = as_definition(c.name, c.prop);
    if (d && d->kind == Definition::Kind::kFunction) fns.emplace(d->var, *d);
  }
  ExprPtr tv = make_named(ExprKind::kVar, t);
  auto body_of = [&](const ExprPtr& f) -> ExprPtr {
    auto it = fns.find(f->name);
    if (it == fns.end()) {
      throw Error(ErrorCode::kNotPolynomial,
                  "no definition for function '" + f->name + "'");
    }
    return apply_rewrite(it->second.rhs, Rewrite::var(it->second.param, tv));
  };
  const PropPtr& p = h.prop;
  ExprPtr lhs;
  ExprPtr rhs;
  if (p->kind == PropKind::kEq && p->lhs->kind == ExprKind::kVar &&
      p->rhs->kind == ExprKind::kVar && fns.count(p->lhs->name) &&
      fns.count(p->rhs->name)) {
    lhs = body_of(p->lhs);
    rhs = body_of(p->rhs);
  } else if (p->kind == PropKind::kForallFn && p->left->kind == PropKind::kEq) {
    Rewrite rw = Rewrite::var(p->var, tv);
    lhs = apply_rewrite(p->left->lhs, rw);
    rhs = apply_rewrite(p->left->rhs, rw);
  } else if (p->kind == PropKind::kEq) {
    lhs = p->lhs;
    rhs = p->rhs;
  } else {
    throw Error(ErrorCode::kNotPolynomial,
                "'" + h.name + "' is not a function equality");
  }
  for (std::size_t round = 0; round <= fns.size(); ++round) {
    for (const auto& [name, d] : fns) {
      Rewrite rw = Rewrite::function(name, d.param, d.rhs);
      lhs = apply_rewrite(lhs, rw);
      rhs = apply_rewrite(rhs, rw);
    }
  }
  RingContext ctx({lhs, rhs});
  std::optional<std::size_t> ti = ctx.index_of(t);
  for (std::size_t i = 0; i < ctx.nvars(); ++i) {
    if (ti && i == *ti) continue;
    if (mentions(ctx.atom_expr(i), t)) {
      throw Error(ErrorCode::kNotPolynomial,
                  "'" + ctx.names()[i] + "' is not polynomial in " + t);
    }
  }
  RationalFunction nl = ctx.normalize(lhs);
  RationalFunction nr = ctx.normalize(rhs);
  std::set<int> powers;
  for (const RationalFunction* f : {&nl, &nr}) {
    if (ti && f->den().degree(*ti) > 0) {
      throw Error(ErrorCode::kNotPolynomial,
                  "denominator of '" + h.name + "' depends on " + t);
    }
    for (const auto& [m, c] : f->num().terms()) {
      powers.insert(ti ? m[*ti] : 0);
    }
  }
  std::vector<Hypothesis> out;
  for (int k : powers) {
    auto coeff = [&](const RationalFunction& f) {
      Polynomial c = ti ? f.num().coefficient(*ti, k) : f.num();
      return ctx.to_expr(RationalFunction(c, f.den()));
    };
    out.push_back(Hypothesis{h.name + "_c" + std::to_string(k),
                             make_cmp(PropKind::kEq, coeff(nl), coeff(nr)),
                             {}});
  }
  return out;
}

}  // namespace physk
