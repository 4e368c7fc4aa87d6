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


#include "physk/lang.h"

#include <filesystem>
#include <random>

#include "gtest/gtest.h"
#include "physk/error.h"
#include "test_support.h"

namespace physk {
namespace {

using ::physk::testing::golden_text;

const char* const kGolden[] = {
    "Ch13_electro_question_8",   "Ch10_question_4",
    "Mechanics_74_University_0", "Mechanics_73_University",
    "University_Mechanics_3",    "competition_mechanics_Ch2_Q32",
    "Ch2_Q1",                    "Electromagnetism_3_University",
};

Error parse_error(const std::string& text) {
  try {
    parse_statement(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return Error(ErrorCode::kIo, "");
}

TEST(ParseStatementTest, CapacitorStatement) {
  Statement s = parse_statement(golden_text("Ch13_electro_question_8"));
  EXPECT_EQ(s.name, "Ch13_electro_question_8");
  EXPECT_EQ(s.decls.size(), 5u);
  EXPECT_EQ(s.hyps.size(), 6u);
  EXPECT_EQ(s.goal->kind, PropKind::kEq);
  EXPECT_EQ(s.meta.level, Level::kCompEasy);
  EXPECT_EQ(s.meta.topic, Topic::kElectromagnetism);
  const Decl* e = s.find_decl("E");
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->kind.text, "Force / Charge");
  EXPECT_EQ(e->kind.dim.to_string(), "M^1 L^1 T^-3 I^-1");
  EXPECT_EQ(print_prop(s.find_hyp("hq")->prop), "q = nano(80 • coulomb)");
}

TEST(ParseStatementTest, TrivialGoal) {
  Statement s = parse_statement("theorem trivial : 0 = 0");
  EXPECT_TRUE(s.hyps.empty());
  EXPECT_TRUE(s.decls.empty());
  EXPECT_EQ(print_prop(s.goal), "0 = 0");
}

TEST(ParseStatementTest, UndeclaredVariableReportsItsPosition) {
  Error e = parse_error("theorem t (x : Length)\n  : x = y");
  EXPECT_EQ(e.code(), ErrorCode::kParseError);
  EXPECT_EQ(std::string(e.what()).rfind("2:9: undeclared identifier 'y'", 0),
            0u)
      << e.what();
}

TEST(ParseStatementTest, Diagnostics) {
  EXPECT_EQ(parse_error("theorem t (x : Lenght) : x = x").code(),
            ErrorCode::kParseError);
  EXPECT_NE(std::string(parse_error("theorem t (x : Lenght) : x = x").what())
                .find("Length"),
            std::string::npos);
  parse_error("theorem t (x y : Length) (h := x = y) (h := y = x) : x = y");
  parse_error("theorem t (x : Length) : x +");
  parse_error("---\ntopic: astrology\n---\ntheorem t : 0 = 0");
  parse_error("---\nname: other\n---\ntheorem t : 0 = 0");
  parse_error("theorem t (x : Length) : x(0) = x");
}

TEST(ParseStatementTest, LeanStyleHypothesisBinders) {
  Statement a = parse_statement(
      "theorem t (x y : Length) (h : x = 2 • meter) : y ≥ x");
  Statement b = parse_statement(
      "theorem t (x : Length) (y : Length) (h := x = 2 • meter) : x <= y");
  EXPECT_TRUE(ast_eq(a, b));
  EXPECT_EQ(a.hyps.size(), 1u);
}

TEST(ParseStatementTest, PrecedenceAndSugar) {
  ExprScope scope;
  Statement s = parse_statement(
      "theorem t (x y : Length) (c : Real) (f : Time -> Length) : x = y");
  scope.statement = &s;
  auto round = [&](const char* in) { return print_expr(parse_expr(in, scope)); };
  EXPECT_EQ(round("2 • x / y"), "2 • x / y");
  EXPECT_EQ(round("(2 • x) / y"), "2 • x / y");
  EXPECT_EQ(round("2 • (x / y)"), "2 • (x / y)");
  EXPECT_EQ(round("-x**2"), "-x**2");
  EXPECT_EQ(round("(-x)**2"), "(-x)**2");
  EXPECT_EQ(round("x - (y - x)"), "x - (y - x)");
  EXPECT_EQ(round("(x - y) - x"), "x - y - x");
  EXPECT_EQ(round("c *. x"), "c • x");
  EXPECT_EQ(round("x^(1/2)"), "x**(1/2)");
  EXPECT_EQ(round("x ** (-2)"), "x**(-2)");
  EXPECT_EQ(round("Real.pi * SI.kilo(x)"), "π * kilo(x)");
  EXPECT_EQ(round("(x / y).val + norm(x)"), "val(x / y) + ‖x‖");
  EXPECT_EQ(round("4e6 • StandardUnit _"), "4000000 • StandardUnit _");
  EXPECT_EQ(round("0.40"), "0.4");
  EXPECT_EQ(round("deriv(f, 3 • second) + f(0)"), "deriv(f, 3 • second) + f(0)");
  EXPECT_EQ(round("cast(x * y, Length^2)"), "cast(x * y, Length^2)");
  EXPECT_EQ(round("StandardUnit[{L^1}]"), "StandardUnit[{L^1}]");
  PropPtr p = parse_prop("(x = y ∧ x ≠ y) ∨ x > y → x < y", scope);
  EXPECT_EQ(print_prop(p), "x = y ∧ x ≠ y ∨ y < x → x < y");
  PropPtr q = parse_prop("forall e in {1, -1}, e * x = x /\\ x != y", scope);
  EXPECT_EQ(print_prop(q), "∀ e ∈ {1, -1}, e * x = x ∧ x ≠ y");
}

TEST(PrintStatementTest, GoldenCorpusRoundTrips) {
  for (const char* name : kGolden) {
    std::string text = golden_text(name);
    ASSERT_FALSE(text.empty()) << name;
    Statement s = parse_statement(text);
    EXPECT_TRUE(spans_nested(s)) << name;
    std::string printed = print_statement(s);
    Statement again = parse_statement(printed);
    EXPECT_TRUE(ast_eq(s, again)) << name << "\n" << printed;
    EXPECT_EQ(print_statement(again), printed) << name;
    // Same bytes, same tree.
    EXPECT_TRUE(ast_eq(s, parse_statement(text))) << name;
  }
}

TEST(PrintStatementTest, SpacingDoesNotMatter) {
  Statement a = parse_statement(
      "theorem m73 (T : Force) (m_1 m_2 : Mass) (a : Acceleration)\n"
      "  (ha := a = m_2 * g / (m_1 + m_2))\n"
      "  : a = (m_2 / (m_1 + m_2)) * g");
  Statement b = parse_statement(
      "theorem m73(T:Force)(m_1 m_2:Mass)(a:Acceleration)(ha:=a=m_2*g/"
      "(m_1+m_2)):a=(m_2/(m_1+m_2))*g");
  EXPECT_TRUE(ast_eq(a, b));
  Statement c = parse_statement(
      "theorem m73 (T : Force) (m_1 m_2 : Mass) (a : Acceleration)\n"
      "  (ha := a = m_2 * g / (m_1 + m_2))\n"
      "  : a = m_2 / (m_1 + m_2) * g");
  EXPECT_TRUE(ast_eq(a, c));
  EXPECT_EQ(print_prop(a.goal), "a = m_2 / (m_1 + m_2) * g");
}

// ---- random round trip ----

class AstGen {
 public:
  explicit AstGen(std::uint64_t seed) : rng_(seed) {}

  ExprPtr expr(int depth, bool eps) {
    if (depth <= 0 || pick(4) == 0) return leaf(eps);
    switch (pick(17)) {
      case 0: return make_binary(ExprKind::kAdd, expr(depth - 1, eps), expr(depth - 1, eps));
      case 1: return make_binary(ExprKind::kSub, expr(depth - 1, eps), expr(depth - 1, eps));
      case 2: return make_binary(ExprKind::kMul, expr(depth - 1, eps), expr(depth - 1, eps));
      case 3: return make_binary(ExprKind::kDiv, expr(depth - 1, eps), expr(depth - 1, eps));
      case 4: return make_unary(ExprKind::kNeg, expr(depth - 1, eps));
      case 5: return make_binary(ExprKind::kSMul, expr(depth - 1, eps), expr(depth - 1, eps));
      case 6: {
        static const BigRational kExps[] = {BigRational(2), BigRational(3),
                                            BigRational(-1), BigRational(1, 2),
                                            BigRational(-3, 2), BigRational(0)};
        return make_pow(expr(depth - 1, eps), kExps[pick(6)]);
      }
      case 7: return make_binary(ExprKind::kRPow, expr(depth - 1, eps), expr(depth - 1, eps));
      case 8: return make_cast(expr(depth - 1, eps), KindRef{"Length", length_});
      case 9: return make_unary(ExprKind::kVal, expr(depth - 1, eps));
      case 10: return make_unary(ExprKind::kNorm, expr(depth - 1, eps));
      case 11: {
        static const ElementaryFn kFns[] = {ElementaryFn::kSin, ElementaryFn::kCos,
                                            ElementaryFn::kLog, ElementaryFn::kExp,
                                            ElementaryFn::kSqrt};
        return make_fn(kFns[pick(5)], expr(depth - 1, eps));
      }
      case 12: return make_call(ExprKind::kApply, "f", expr(depth - 1, eps));
      case 13: return make_call(ExprKind::kDeriv, "f", expr(depth - 1, eps));
      case 14: return make_call(ExprKind::kPrefix, "kilo", expr(depth - 1, eps));
      case 15: return make_cast(expr(depth - 1, eps),
                                KindRef{"Force / Charge", force_ / charge_});
      default: return make_binary(ExprKind::kMul, leaf(eps), expr(depth - 1, eps));
    }
  }

  PropPtr prop(int depth, bool eps) {
    int choice = depth <= 0 ? 0 : pick(7);
    switch (choice) {
      case 0:
      case 1: {
        static const PropKind kCmp[] = {PropKind::kEq, PropKind::kNe,
                                        PropKind::kLe, PropKind::kLt};
        return make_cmp(kCmp[pick(4)], expr(depth, eps), expr(depth, eps));
      }
      case 2: return make_connective(PropKind::kAnd, prop(depth - 1, eps), prop(depth - 1, eps));
      case 3: return make_connective(PropKind::kOr, prop(depth - 1, eps), prop(depth - 1, eps));
      case 4: return make_connective(PropKind::kImplies, prop(depth - 1, eps), prop(depth - 1, eps));
      case 5:
        if (eps) return prop(depth - 1, eps);
        return make_forall_finite("ε", {make_num(1), make_unary(ExprKind::kNeg, make_num(1))},
                                  prop(depth - 1, true));
      default:
        return make_forall_fn("τ", KindRef{"Time", time_}, prop(depth - 1, eps));
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  ExprPtr leaf(bool eps) {
    switch (pick(eps ? 8 : 7)) {
      case 0: {
        static const char* kNums[] = {"0", "1", "2.5", "13", "0.04", "4000000", "273.15"};
        return make_num(*parse_rational(kNums[pick(7)]));
      }
      case 1: return make_named(ExprKind::kVar, pick(2) ? "x" : "y");
      case 2: return make_named(ExprKind::kUnit, pick(2) ? "meter" : "coulomb");
      case 3: return make_named(ExprKind::kConst, pick(2) ? "g" : "π");
      case 4: return make_std_unit(std::nullopt);
      case 5: return make_std_unit(KindRef{"Force", force_});
      case 6: return make_std_unit(kind_of_dimension(charge_));
      default: return make_named(ExprKind::kVar, "ε");
    }
  }

  std::mt19937_64 rng_;
  Dimension length_ = UnitDb::standard().lookup_kind("Length");
  Dimension time_ = UnitDb::standard().lookup_kind("Time");
  Dimension force_ = UnitDb::standard().lookup_kind("Force");
  Dimension charge_ = UnitDb::standard().lookup_kind("Charge");
};

TEST(RoundTripPropertyTest, RandomAstsSurvivePrintAndParse) {
  Statement scope_stmt = parse_statement(
      "theorem scope (x y : Length) (f : Time -> Length) : x = y");
  ExprScope scope;
  scope.statement = &scope_stmt;
  AstGen gen(31337);
  int cases = 0;
  for (int i = 0; i < 600; ++i) {
    int depth = 1 + i % 8;
    ExprPtr e = gen.expr(depth, false);
    std::string text = print_expr(e);
    ExprPtr back = parse_expr(text, scope);
    ASSERT_TRUE(ast_eq(e, back)) << text << "\n" << print_expr(back);
    PropPtr p = gen.prop(std::min(depth, 4), false);
    std::string ptext = print_prop(p);
    PropPtr pback = parse_prop(ptext, scope);
    ASSERT_TRUE(ast_eq(p, pback)) << ptext << "\n" << print_prop(pback);
    ++cases;
  }
  EXPECT_GE(cases, 500);
}

}  // namespace
}  // namespace physk
