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

// physk command-line tool.
//
// Exit status: 0 proved (or check/eval/stats succeeded), 1 unknown or
// dimension mismatch, 2 refuted, 3 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "physk/corpus.h"
#include "physk/dimcheck.h"
#include "physk/error.h"
#include "physk/harness.h"
#include "physk/lang.h"
#include "physk/prover.h"
#include "physk/soundness.h"
#include "physk/unitdb.h"

namespace {

using physk::Error;
using physk::ErrorCode;

constexpr int kExitProved = 0;
constexpr int kExitUnknown = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitInput = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << text;
}

// NAME=VALUE overrides on top of the built-in constants.
physk::ConstantTable constants_from(const std::vector<std::string>& specs) {
  physk::ConstantTable table = physk::UnitDb::standard().constants();
  for (const auto& spec : specs) {
    auto eq = spec.find('=');
    auto value = eq == std::string::npos
                     ? std::nullopt
                     : physk::parse_rational(spec.substr(eq + 1));
    if (!value) {
      throw Error(ErrorCode::kValidation,
                  "expected NAME=VALUE for --constant, got '" + spec + "'");
    }
    table.override_value(spec.substr(0, eq), *value);
  }
  return table;
}

void print_dims(const physk::DimReport& report, const std::string& text,
                std::ostream& out) {
  for (const auto& e : report.entries) {
    if (e.homogeneous) {
      out << e.name << ": homogeneous\n";
      continue;
    }
    auto pos = physk::source_pos(text, e.span.begin);
    out << e.name << ": mismatch at " << pos.line << ":" << pos.column << ": "
        << e.message << "\n";
  }
}

nlohmann::ordered_json verdict_json(const physk::Verdict& v) {
  nlohmann::ordered_json j;
  j["verdict"] = physk::verdict_name(v.kind);
  j["trace"] = physk::print_script(v.trace);
  j["residual"] = v.residual;
  j["failed_step"] = v.failed_step ? nlohmann::ordered_json(*v.failed_step)
                                   : nlohmann::ordered_json();
  j["message"] = v.message;
  j["counterexample"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : v.counterexample) {
    j["counterexample"][name] = value;
  }
  j["side_conditions"] = nlohmann::ordered_json::array();
  for (const auto& c : v.side_conditions) {
    j["side_conditions"].push_back({{"text", c.text},
                                    {"discharged", c.discharged}});
  }
  j["approx_decided"] = v.approx_decided;
  j["numeric_used"] = v.numeric_used;
  j["dimension_mismatches"] = v.dims.mismatches();
  return j;
}

void print_verdict(const physk::Verdict& v, const std::string& text,
                   std::ostream& out) {
  out << "verdict: " << physk::verdict_name(v.kind) << "\n";
  if (!v.message.empty()) out << "message: " << v.message << "\n";
  if (v.dims.mismatches() > 0) print_dims(v.dims, text, out);
  if (!v.trace.steps.empty()) {
    out << "trace:\n";
    for (const auto& s : v.trace.steps) out << "  " << physk::print_step(s) << "\n";
  }
  if (v.failed_step) out << "failed step: " << *v.failed_step + 1 << "\n";
  if (!v.residual.empty()) {
    out << "residual:\n";
    std::istringstream lines(v.residual);
    for (std::string l; std::getline(lines, l);) out << "  " << l << "\n";
  }
  if (!v.counterexample.empty()) {
    out << "counterexample:\n";
    for (const auto& [name, value] : v.counterexample) {
      out << "  " << name << " = " << value << "\n";
    }
  }
  if (!v.side_conditions.empty()) {
    out << "side conditions:\n";
    for (const auto& c : v.side_conditions) {
      out << "  " << c.text << (c.discharged ? " (discharged)" : " (assumed)")
          << "\n";
    }
  }
  if (v.approx_decided) out << "note: decided at 50-digit precision\n";
}

int exit_for(physk::VerdictKind kind) {
  switch (kind) {
    case physk::VerdictKind::kProved:
      return kExitProved;
    case physk::VerdictKind::kRefuted:
      return kExitRefuted;
    case physk::VerdictKind::kUnknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimension checker and prover for physics statements"};
  app.require_subcommand(1);
  std::vector<std::string> constants;
  auto add_constants = [&](CLI::App* cmd) {
    cmd->add_option("--constant", constants,
                    "Override a constant, NAME=VALUE in coherent SI");
  };

  std::string file;
  std::string script_file;
  bool json = false;
  bool fuzz = false;

  auto* check = app.add_subcommand("check", "Dimension-check a statement");
  check->add_option("file", file)->required();

  auto* prove = app.add_subcommand("prove", "Run the auto-prover");
  prove->add_option("file", file)->required();
  prove->add_flag("--json", json, "Machine-readable verdict");
  prove->add_flag("--fuzz", fuzz, "Soundness fuzz after a proof");
  add_constants(prove);

  auto* verify = app.add_subcommand("verify-script", "Check a derivation script");
  verify->add_option("file", file)->required();
  verify->add_option("script", script_file)->required();
  verify->add_flag("--json", json, "Machine-readable verdict");
  add_constants(verify);

  std::string corpus_dir;
  std::string prover_cmd;
  std::size_t k = 16;
  double timeout = 60;
  std::size_t workers = 4;
  std::string report_json_path;
  std::string report_text_path;
  std::string attempts_path;
  auto* eval = app.add_subcommand("eval", "Pass@k evaluation over a corpus");
  eval->add_option("corpus", corpus_dir)->required();
  eval->add_option("--prover", prover_cmd,
                   "External prover command; built-in prover when absent");
  eval->add_option("-k", k, "Attempts per entry (external prover)")
      ->check(CLI::PositiveNumber);
  eval->add_option("--timeout", timeout, "Seconds per attempt")
      ->check(CLI::PositiveNumber);
  eval->add_option("--workers", workers, "Entries evaluated in parallel")
      ->check(CLI::PositiveNumber);
  eval->add_option("--report-json", report_json_path);
  eval->add_option("--report-text", report_text_path);
  eval->add_option("--attempts", attempts_path, "JSONL attempt log");
  add_constants(eval);

  app.add_subcommand("units", "Print the unit database as Markdown");

  auto* stats = app.add_subcommand("stats", "Counts by level and topic");
  stats->add_option("corpus", corpus_dir)->required();

  std::string table_path = "data/table1.json";
  std::vector<std::string> swaps;
  auto* delta = app.add_subcommand(
      "delta", "Per-model improvement from a published results table");
  delta->add_option("table", table_path);
  delta->add_option("--swap", swaps,
                    "Exchange a model's two overall cells before computing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  try {
    if (check->parsed()) {
      std::string text = read_file(file);
      physk::DimReport r = physk::check_dimensions(physk::parse_statement(text));
      print_dims(r, text, std::cout);
      return r.ok() ? 0 : kExitUnknown;
    }
    if (prove->parsed() || verify->parsed()) {
      std::string text = read_file(file);
      physk::Statement s = physk::parse_statement(text);
      physk::ProverConfig config;
      config.constants = constants_from(constants);
      physk::Verdict v =
          prove->parsed()
              ? physk::auto_prove(s, config)
              : physk::check_derivation(
                    s, physk::parse_script(read_file(script_file)), config);
      auto j = verdict_json(v);
      if (fuzz && v.kind == physk::VerdictKind::kProved) {
        physk::FuzzReport f = physk::soundness_fuzz(s, {}, config.constants);
        j["fuzz"] = {{"attempts", f.attempts},
                     {"non_vacuous", f.non_vacuous},
                     {"falsified", f.falsified}};
      }
      if (json) {
        std::cout << j.dump(2) << "\n";
      } else {
        print_verdict(v, text, std::cout);
        if (j.contains("fuzz")) {
          std::cout << "fuzz: " << j["fuzz"]["non_vacuous"] << " instances, "
                    << j["fuzz"]["falsified"] << " falsified\n";
        }
      }
      return exit_for(v.kind);
    }
    if (eval->parsed()) {
      physk::ConstantTable base = constants_from(constants);
      auto corpus = physk::load_corpus(corpus_dir, base);
      physk::ProverBinding binding;
      if (prover_cmd.empty()) {
        physk::BuiltinProver b;
        b.config.constants = base;
        binding = b;
      } else {
        physk::ExternalProver e;
        e.command = prover_cmd;
        e.k = k;
        e.timeout_seconds = timeout;
        e.config.constants = base;
        binding = e;
      }
      physk::EvalResult result =
          physk::run_eval(corpus, binding, physk::EvalOptions{workers});
      std::string text = physk::render_report(result.report);
      std::cout << text;
      if (!report_text_path.empty()) write_file(report_text_path, text);
      if (!report_json_path.empty()) {
        write_file(report_json_path, physk::report_json(result.report));
      }
      if (!attempts_path.empty()) {
        write_file(attempts_path, physk::attempt_log_jsonl(result.attempts));
      }
      return 0;
    }
    if (app.got_subcommand("units")) {
      std::cout << physk::UnitDb::standard().render_table();
      return 0;
    }
    if (stats->parsed()) {
      auto st = physk::corpus_stats(physk::load_corpus(corpus_dir));
      std::cout << "total: " << st.total << "\n";
      std::cout << "competition: " << st.competition() << "\n";
      for (const auto& [level, n] : st.by_level) {
        std::cout << "level " << physk::level_name(level) << ": " << n << "\n";
      }
      for (const auto& [topic, n] : st.by_topic) {
        std::cout << "topic " << physk::topic_name(topic) << ": " << n << "\n";
      }
      return 0;
    }
    if (delta->parsed()) {
      physk::ResultsTable table = physk::load_results_table(table_path);
      for (const auto& m : swaps) table = physk::swap_overall(table, m);
      auto d = physk::improvement_delta(table.with_library,
                                        table.without_library);
      for (const auto& [model, points] : d.deltas) {
        std::string p = physk::format_points(points);
        std::cout << model << ": " << (points > 0 ? "+" : "") << p << "\n";
      }
      std::cout << "mean: " << physk::format_points(d.mean) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << physk::error_code_name(e.code()) << ": "
              << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
