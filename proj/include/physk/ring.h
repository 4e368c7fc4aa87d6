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

#ifndef PHYSK_RING_H_
#define PHYSK_RING_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "physk/ast.h"
#include "physk/rational.h"

namespace physk {

/// Sparse multivariate polynomial over ℚ in a fixed number of variables.
/// Terms are kept in lexicographic order, variable 0 most significant.
class Polynomial {
 public:
  using Monomial = std::vector<int>;
  using Terms = std::map<Monomial, BigRational, std::greater<Monomial>>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(std::size_t nvars, const BigRational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial.
  BigRational constant_value() const;

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const BigRational& leading_coefficient() const {
    return terms_.begin()->second;
  }

  int degree(std::size_t var) const;
  /// Coefficient of var^power, itself free of var.
  Polynomial coefficient(std::size_t var, int power) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const BigRational& c) const;
  Polynomial pow(unsigned n) const;
  /// Divides leading coefficient to 1. Zero stays zero.
  Polynomial monic() const;

  /// Quotient when `d` divides this exactly.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// "3*x^2*y - 1/2*z + 4" using `names` for variables.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Monomial& m, const BigRational& c);

  std::size_t nvars_;
  Terms terms_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// num/den with gcd(num, den) = 1 and a monic denominator.
class RationalFunction {
 public:
  explicit RationalFunction(std::size_t nvars = 0);
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction constant(std::size_t nvars, const BigRational& c);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a,
                                    const RationalFunction& b);
  /// Throws kDivisionByZero for a zero divisor.
  friend RationalFunction operator/(const RationalFunction& a,
                                    const RationalFunction& b);
  RationalFunction pow(long long n) const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  Polynomial num_;
  Polynomial den_;
};

/// Maps expressions of one problem onto rational functions over a shared,
/// sorted atom table. The map is the val projection: units become their
/// scale, StandardUnit becomes 1, casts and val are transparent. Variables
/// and constants are atoms; so are transcendental, root and function
/// application subterms, keyed by their printed form.
class RingContext {
 public:
  explicit RingContext(const std::vector<ExprPtr>& exprs);

  /// Throws kDivisionByZero for division by the zero function and
  /// kUnsupportedNode for a subterm the constructor never saw.
  RationalFunction normalize(const ExprPtr& e);

  std::size_t nvars() const { return atoms_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(const std::string& key) const;
  /// Val-level expression standing for atom `i`.
  const ExprPtr& atom_expr(std::size_t i) const { return reps_[i]; }

  /// Nonconstant divisors met while normalizing, deduplicated and monic.
  const std::vector<Polynomial>& denominators() const { return denominators_; }

  ExprPtr to_expr(const Polynomial& p) const;
  ExprPtr to_expr(const RationalFunction& f) const;

 private:
  void collect(const ExprPtr& e);
  void note_denominator(const Polynomial& p);

  std::vector<std::string> atoms_;  // sorted keys
  std::vector<std::string> names_;  // display text per atom
  std::vector<ExprPtr> reps_;
  std::map<std::string, std::size_t> index_;
  std::vector<Polynomial> denominators_;
};

/// Atom key of `e` if the ring treats it as opaque, else nullopt.
std::optional<std::string> ring_atom_key(const ExprPtr& e);

/// True iff both sides normalize to the same rational function after the
/// substitutions are applied. Divisors become side conditions.
bool ring_equal(const ExprPtr& lhs, const ExprPtr& rhs,
                const std::map<std::string, ExprPtr>& substitutions = {},
                std::vector<std::string>* side_conditions = nullptr);

/// Coefficient equations `h_c<k>` for a function equality, with `t` as the
/// function argument. `h` is `f = g` between defined function variables,
/// `∀ s, lhs = rhs`, or a plain equation in t. `context` supplies the
/// function definitions. Throws kNotPolynomial.
std::vector<Hypothesis> poly_coeff_eqs(const Hypothesis& h,
                                       const std::string& t,
                                       const std::vector<Hypothesis>& context);

}  // namespace physk

#endif  // PHYSK_RING_H_
