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

// Python bindings. Statements cross the boundary as source text; results
// come back as plain dicts and strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "physk/corpus.h"
#include "physk/dimcheck.h"
#include "physk/error.h"
#include "physk/evaluator.h"
#include "physk/harness.h"
#include "physk/lang.h"
#include "physk/prover.h"
#include "physk/ring.h"
#include "physk/soundness.h"
#include "physk/unitdb.h"

namespace py = pybind11;

namespace physk {
namespace {

ConstantTable constants_from(const std::map<std::string, std::string>& overrides) {
  ConstantTable table = UnitDb::standard().constants();
  for (const auto& [name, text] : overrides) {
    auto value = parse_rational(text);
    if (!value) {
      throw Error(ErrorCode::kValidation,
                  "constant " + name + ": not a rational '" + text + "'");
    }
    table.override_value(name, *value);
  }
  return table;
}

py::dict dim_report_dict(const DimReport& r) {
  py::list entries;
  for (const auto& e : r.entries) {
    py::dict d;
    d["name"] = e.name;
    d["homogeneous"] = e.homogeneous;
    d["span"] = py::make_tuple(e.span.begin, e.span.end);
    d["expected"] = e.expected.to_string();
    d["found"] = e.found.to_string();
    d["message"] = e.message;
    entries.append(d);
  }
  py::dict out;
  out["ok"] = r.ok();
  out["mismatches"] = r.mismatches();
  out["entries"] = entries;
  return out;
}

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["verdict"] = std::string(verdict_name(v.kind));
  std::vector<std::string> trace;
  for (const auto& s : v.trace.steps) trace.push_back(print_step(s));
  d["trace"] = trace;
  d["residual"] = v.residual;
  d["failed_step"] = v.failed_step ? py::object(py::int_(*v.failed_step))
                                   : py::object(py::none());
  d["message"] = v.message;
  py::dict cex;
  for (const auto& [name, value] : v.counterexample) cex[py::str(name)] = value;
  d["counterexample"] = cex;
  py::list side;
  for (const auto& c : v.side_conditions) {
    side.append(py::make_tuple(c.text, c.discharged));
  }
  d["side_conditions"] = side;
  d["approx_decided"] = v.approx_decided;
  d["numeric_used"] = v.numeric_used;
  d["dims"] = dim_report_dict(v.dims);
  return d;
}

ProverConfig config_from(const std::map<std::string, std::string>& constants) {
  ProverConfig config;
  config.constants = constants_from(constants);
  return config;
}

}  // namespace
}  // namespace physk

PYBIND11_MODULE(_core, m) {
  using namespace physk;
  m.doc() = "Dimension checking and proving for physics statements";

  static py::exception<Error> error(m, "PhyskError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error)(std::string(error_code_name(e.code())) + ": " +
                             e.what());
      exc.attr("code") = std::string(error_code_name(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("normalize", [](const std::string& text) {
    return print_statement(parse_statement(text));
  }, py::arg("text"), "Parse a statement and print it back canonically.");

  m.def("check", [](const std::string& text) {
    return dim_report_dict(check_dimensions(parse_statement(text)));
  }, py::arg("text"), "Dimension report for every hypothesis and the goal.");

  m.def("prove",
        [](const std::string& text,
           const std::map<std::string, std::string>& constants) {
          return verdict_dict(auto_prove(parse_statement(text),
                                         config_from(constants)));
        },
        py::arg("text"), py::arg("constants") = std::map<std::string, std::string>{});

  m.def("verify_script",
        [](const std::string& text, const std::string& script,
           const std::map<std::string, std::string>& constants) {
          return verdict_dict(check_derivation(parse_statement(text),
                                               parse_script(script),
                                               config_from(constants)));
        },
        py::arg("text"), py::arg("script"),
        py::arg("constants") = std::map<std::string, std::string>{});

  m.def("evaluate",
        [](const std::string& text, const std::string& expr) {
          Statement s = elaborate(parse_statement(text));
          Quantity q = eval_numeric(parse_expr(expr, ExprScope{&s, {}}),
                                    definitional_env(s));
          return py::make_tuple(q.val().to_string(), q.dim().to_string(),
                                q.val().is_exact());
        },
        py::arg("text"), py::arg("expr"),
        "Value of EXPR under the statement's definitions: (value, dimension, exact).");

  m.def("ring_equal",
        [](const std::string& text, const std::string& a, const std::string& b) {
          Statement s = parse_statement(text);
          ExprScope scope{&s, {}};
          return ring_equal(parse_expr(a, scope), parse_expr(b, scope));
        },
        py::arg("text"), py::arg("a"), py::arg("b"));

  m.def("fuzz",
        [](const std::string& text, std::uint64_t seed) {
          FuzzConfig options;
          options.seed = seed;
          FuzzReport r = soundness_fuzz(parse_statement(text), options,
                                        UnitDb::standard().constants());
          py::dict d;
          d["attempts"] = r.attempts;
          d["non_vacuous"] = r.non_vacuous;
          d["falsified"] = r.falsified;
          return d;
        },
        py::arg("text"), py::arg("seed") = 1);

  m.def("aggregate",
        [](const std::vector<std::pair<std::size_t, std::size_t>>& parts) {
          std::vector<PassCount> counts;
          for (const auto& [p, t] : parts) counts.push_back(PassCount{p, t});
          PassCount total = aggregate(counts);
          return py::make_tuple(total.passes, total.total,
                                format_percent(total.rate()));
        },
        py::arg("parts"), "Pool (passes, total) pairs: (passes, total, percent).");

  m.def("eval_corpus",
        [](const std::string& dir, std::size_t workers) {
          auto corpus = load_corpus(dir);
          EvalResult r;
          {
            py::gil_scoped_release release;
            r = run_eval(corpus, BuiltinProver{}, EvalOptions{workers});
          }
          return report_json(r.report);
        },
        py::arg("corpus_dir"), py::arg("workers") = 4,
        "Built-in prover over a corpus directory; the JSON report as text.");

  m.def("units_table", [] { return UnitDb::standard().render_table(); });
}
