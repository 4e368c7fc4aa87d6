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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// fails.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "physk/dimcheck.h"
#include "physk/error.h"
#include "physk/evaluator.h"
#include "physk/harness.h"
#include "physk/lang.h"
#include "physk/prover.h"
#include "physk/rewrite.h"
#include "physk/ring.h"
#include "test_support.h"

namespace physk {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using testing::golden_text;

// Collects failed checks with a short reason.
class Criterion {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failure_.empty()) failure_ = what;
  }
  void note(const std::string& detail) { detail_ = detail; }
  bool ok() const { return failure_.empty(); }
  std::string summary() const { return ok() ? detail_ : failure_; }

 private:
  std::string failure_;
  std::string detail_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Statement golden(const std::string& name) {
  return parse_statement(golden_text(name));
}

bool has_step(const Verdict& v, StepKind kind) {
  for (const auto& s : v.trace.steps) {
    if (s.kind == kind) return true;
  }
  return false;
}

// Root of `residual(x) = 0` for a residual affine in x.
NumericValue affine_root(const std::function<NumericValue(int)>& residual) {
  NumericValue r0 = residual(0);
  NumericValue r1 = residual(1);
  return -r0 / (r1 - r0);
}

void capacitor(Criterion& c) {
  auto start = Clock::now();
  Statement s = golden("Ch13_electro_question_8");
  Verdict v = auto_prove(s);
  double elapsed = seconds_since(start);
  EvalEnv env = definitional_env(elaborate(s));
  const Quantity& cap = env.values.at("C");
  c.require(v.kind == VerdictKind::kProved, "verdict " +
                                                std::string(verdict_name(v.kind)));
  c.require(cap.val().is_exact() &&
                cap.val().exact() == BigRational(1, 125000000000LL),
            "C = " + cap.to_string());
  c.require(cap.dim() == UnitDb::standard().lookup_unit("farad").dim(),
            "C not in farad dimension");
  c.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  c.note("C = " + cap.to_string() + ", proved in " +
         std::to_string(static_cast<int>(elapsed * 1000)) + " ms");
}

void ideal_gas(Criterion& c) {
  auto start = Clock::now();
  Statement s = golden("Ch10_question_4");
  Statement e = elaborate(s);
  Quantity ratio =
      eval_numeric(parse_expr("V2 / V1", ExprScope{&e, {}}), definitional_env(e));
  Verdict v = auto_prove(s);
  double elapsed = seconds_since(start);
  c.require(ratio.val().is_exact() &&
                ratio.val().exact() == BigRational(10832250, 144739),
            "V2/V1 = " + ratio.to_string());
  c.require(v.kind == VerdictKind::kProved, "goal not closed");
  c.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  c.note("V2/V1 = " + ratio.val().to_string() +
         (v.approx_decided ? ", closed at 50 digits" : ", closed structurally"));
}

void friction(Criterion& c) {
  Statement s = golden("Mechanics_74_University_0");
  EvalEnv env = definitional_env(elaborate(s));
  c.require(env.values.at("μ_s").val().exact() == BigRational(46, 100),
            "μ_s = " + env.values.at("μ_s").to_string());
  c.require(env.values.at("μ_k").val().exact() == BigRational(40, 100),
            "μ_k = " + env.values.at("μ_k").to_string());
  c.require(auto_prove(s).kind == VerdictKind::kProved, "not proved");
  c.note("μ_s = 23/50, μ_k = 2/5");
}

void rearrangement(Criterion& c) {
  Statement s = golden("Mechanics_73_University");
  ExprScope scope{&s, {}};
  bool closes = ring_equal(parse_expr("m_2 * g / (m_1 + m_2)", scope),
                           parse_expr("(m_2 / (m_1 + m_2)) * g", scope));
  Verdict v = auto_prove(s);
  c.require(closes, "ring_equal false");
  c.require(v.kind == VerdictKind::kProved, "not proved");
  c.require(!v.numeric_used, "numeric evaluation used");
  c.require(has_step(v, StepKind::kRingCheck), "no ring step");
  c.note("ring closes, no numeric evaluation");
}

void kinematics(Criterion& c) {
  Statement s = elaborate(golden("University_Mechanics_3"));
  auto eqs = poly_coeff_eqs(*s.find_hyp("hxxx"), "t", s.hyps);
  c.require(eqs.size() == 2, "expected two coefficient equations");
  if (!c.ok()) return;
  const UnitDb& db = UnitDb::standard();
  EvalEnv env;
  env.values["v_0"] = Quantity(0, db.lookup_kind("Speed"));
  env.values["a"] = Quantity(0, db.lookup_kind("Acceleration"));
  auto solve = [&](const PropPtr& eq, const std::string& var) {
    Dimension dim = env.values.at(var).dim();
    return affine_root([&](int x) {
      env.values[var] = Quantity(x, dim);
      return (eval_numeric(eq->lhs, env).val() - eval_numeric(eq->rhs, env).val());
    });
  };
  NumericValue v0 = solve(eqs[0].prop, "v_0");
  NumericValue a = solve(eqs[1].prop, "a");
  c.require(v0.is_exact() && v0.exact() == BigRational(-2), "v0 = " + v0.to_string());
  c.require(a.is_exact() && a.exact() == BigRational(6), "a = " + a.to_string());
  Verdict v = auto_prove(golden("University_Mechanics_3"));
  c.require(v.kind == VerdictKind::kProved, "not proved");
  c.require(has_step(v, StepKind::kPolyMatch), "no coefficient matching");
  c.note("a = 6 m/s², v0 = -2 m/s");
}

void epsilon_cases(Criterion& c) {
  Statement raw = golden("competition_mechanics_Ch2_Q32");
  Statement s = elaborate(raw);
  // Oracle first: per branch the antecedent is affine in v², and its root
  // must equal the goal's right side at random points.
  const UnitDb& db = UnitDb::standard();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(1, 40);
  auto draw = [&] { return BigRational(num(rng), num(rng)); };
  int checked = 0;
  for (const auto& eps : s.goal->values) {
    PropPtr body = apply_rewrite(s.goal->left, Rewrite::var("ε", eps));
    for (const char* def : {"N_def", "f_def", "r_def"}) {
      const Hypothesis* h = s.find_hyp(def);
      body = apply_rewrite(body, Rewrite::var(h->prop->lhs->name, h->prop->rhs));
    }
    for (int trial = 0; trial < 20; ++trial) {
      EvalEnv env;
      env.values["m"] = Quantity(draw(), db.lookup_kind("Mass"));
      env.values["R"] = Quantity(draw(), db.lookup_kind("Length"));
      env.values["θ"] = Quantity::dimensionless(draw() / 40);
      env.values["μ"] = Quantity::dimensionless(draw() / 40);
      Dimension vdim = s.find_decl("v")->kind.dim;
      NumericValue v2 = affine_root([&](int w) {
        env.values["v"] =
            Quantity(NumericValue(w).pow_rational(BigRational(1, 2)), vdim);
        return eval_numeric(body->left->lhs, env).val() -
               eval_numeric(body->left->rhs, env).val();
      });
      NumericValue goal = eval_numeric(body->right->rhs, env).val();
      c.require(numeric_equal(v2, goal), "oracle disagrees with the goal");
      ++checked;
    }
  }
  Verdict v = auto_prove(raw);
  c.require(v.kind == VerdictKind::kProved, "not proved");
  c.require(!v.trace.steps.empty() &&
                print_step(v.trace.steps[0]) == "cases ε {1, -1}",
            "no case split on ε");
  c.require(has_step(v, StepKind::kRingCheck), "no ring step");
  c.note("oracle agreed at " + std::to_string(checked) +
         " points; cases + ring proved");
}

void dimension_analysis(Criterion& c) {
  DimReport clean = check_dimensions(golden("Ch2_Q1"));
  c.require(clean.ok(), "capstan not homogeneous");
  std::string text = golden_text("Ch2_Q1");
  auto at = text.find("T(0) = m * g");
  c.require(at != std::string::npos, "mutation site missing");
  if (!c.ok()) return;
  text.replace(at, 12, "T(0) = m");
  DimReport mutated = check_dimensions(parse_statement(text));
  c.require(mutated.mismatches() == 1, "mismatches: " +
                                           std::to_string(mutated.mismatches()));
  const UnitDb& db = UnitDb::standard();
  for (const auto& e : mutated.entries) {
    if (e.homogeneous) continue;
    c.require(e.name == "T_light_def", "mismatch at " + e.name);
    c.require(e.expected == db.lookup_kind("Force") &&
                  e.found == db.lookup_kind("Mass"),
              "expected " + e.expected.to_string() + ", found " +
                  e.found.to_string());
    c.note("capstan homogeneous; mutation: " + e.name + " " + e.message);
  }
}

void aggregation(Criterion& c) {
  std::vector<PassCount> dsp = {{9, 104}, {18, 62}, {2, 34}};
  PassCount o1 = aggregate(dsp);
  c.require(o1 == PassCount{29, 200}, "DeepSeek overall count");
  c.require(format_percent(o1.rate()) == "14.50%", "DeepSeek overall rate");
  c.require(format_percent(dsp[0].rate()) == "8.65%" &&
                format_percent(dsp[1].rate()) == "29.03%" &&
                format_percent(dsp[2].rate()) == "5.88%",
            "DeepSeek level rates");
  PassCount o2 = aggregate({{33, 104}, {46, 62}, {0, 34}});
  c.require(o2 == PassCount{79, 200} && format_percent(o2.rate()) == "39.50%",
            "Gemini overall");
  c.note("29/200 = 14.50% (8.65%/29.03%/5.88%); 79/200 = 39.50%");
}

// Runs `command`, returning its exit status; output goes to `log`.
int run(const std::string& command, const fs::path& log) {
  int status = std::system((command + " > " + log.string() + " 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void property_suites(Criterion& c) {
  struct Suite {
    const char* binary;
    std::vector<const char*> required;
  };
  const std::vector<Suite> suites = {
      {"dimension_test",
       {"DimensionPropertyTest.GroupLaws", "DimensionPropertyTest.ScaleLaws"}},
      {"numeric_test", {"NumericValuePropertyTest.FieldOperationsStayExact"}},
      {"quantity_test", {"QuantityPropertyTest.ValIsAHomomorphism"}},
      {"unitdb_test", {}},
      {"lang_test", {"RoundTripPropertyTest.RandomAstsSurvivePrintAndParse"}},
      {"checker_test",
       {"RingProperty.RewrittenPairsAreRingEqualAndAgreeNumerically",
        "SoundnessFuzz.NoProvedGoldenEntryIsFalsified",
        "DimCheckProperty.StableUnderCastInsertion"}},
      {"corpus_test", {"LoadCorpusProperty.IdempotentAndOrderIndependent"}},
      {"harness_test", {"RunEvalProperty.PassAtKIsMonotone"}},
  };
  fs::path dir = PHYSK_TEST_BINARY_DIR;
  fs::path log = fs::temp_directory_path() /
                 ("physk_acceptance_" + std::to_string(::getpid()) + ".log");
  auto start = Clock::now();
  for (const auto& suite : suites) {
    int status = run((dir / suite.binary).string(), log);
    std::string out = testing::read_file(log);
    c.require(status == 0, std::string(suite.binary) + " failed");
    for (const char* name : suite.required) {
      c.require(out.find("[       OK ] " + std::string(name)) != std::string::npos,
                std::string(name) + " did not pass");
    }
  }
  fs::remove(log);
  double elapsed = seconds_since(start);
  c.require(elapsed < 60.0, "suite took " + std::to_string(elapsed) + " s");
  c.note("all unit and property suites green in " +
         std::to_string(static_cast<int>(elapsed)) + " s");
}

void determinism(Criterion& c) {
  fs::path tmp = fs::temp_directory_path();
  std::string pid = std::to_string(::getpid());
  fs::path a = tmp / ("physk_report_a_" + pid + ".json");
  fs::path b = tmp / ("physk_report_b_" + pid + ".json");
  fs::path log = tmp / ("physk_eval_" + pid + ".log");
  std::string base = std::string(PHYSK_CLI) + " eval " +
                     testing::corpus_dir().string() + " --report-json ";
  c.require(run(base + a.string(), log) == 0, "first eval failed");
  c.require(run(base + b.string(), log) == 0, "second eval failed");
  std::string ra = testing::read_file(a);
  std::string rb = testing::read_file(b);
  c.require(!ra.empty() && ra == rb, "reports differ");
  c.note("two eval runs, " + std::to_string(ra.size()) +
         "-byte reports identical");
  for (const auto& p : {a, b, log}) fs::remove(p);
}

}  // namespace
}  // namespace physk

int main() {
  using physk::Criterion;
  struct Entry {
    const char* title;
    void (*run)(Criterion&);
  };
  const Entry criteria[] = {
      {"capacitor proved, C = 1/125000000000 F", physk::capacitor},
      {"ideal gas V2/V1 = 10832250/144739", physk::ideal_gas},
      {"friction coefficients 0.46 and 0.40", physk::friction},
      {"symbolic rearrangement by ring", physk::rearrangement},
      {"kinematics coefficient matching", physk::kinematics},
      {"epsilon cases with ring", physk::epsilon_cases},
      {"capstan dimension analysis", physk::dimension_analysis},
      {"pass-rate aggregation", physk::aggregation},
      {"property suites under 60 s", physk::property_suites},
      {"deterministic eval reports", physk::determinism},
  };
  int failed = 0;
  int index = 1;
  for (const auto& entry : criteria) {
    Criterion c;
    try {
      entry.run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    failed += !c.ok();
    std::cout << (c.ok() ? "PASS" : "FAIL") << " " << index++ << ". "
              << entry.title << ": " << c.summary() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
