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

#include "physk/harness.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "physk/error.h"

namespace physk {
namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxChildOutput = 16 << 20;

std::string level_title(Level level) {
  switch (level) {
    case Level::kCollege:
      return "College";
    case Level::kCompEasy:
      return "Comp-Easy";
    case Level::kCompHard:
      return "Comp-Hard";
  }
  return "";
}

std::string ratio(const PassCount& c) {
  std::string s = std::to_string(c.passes) + "/" + std::to_string(c.total);
  if (c.total == 0) s += " (empty)";
  return s;
}

ordered_json count_json(const PassCount& c) {
  ordered_json j;
  j["passes"] = c.passes;
  j["total"] = c.total;
  j["rate"] = to_string(c.rate());
  j["percent"] = format_percent(c.rate());
  return j;
}

int rank(VerdictKind v) {
  switch (v) {
    case VerdictKind::kProved:
      return 2;
    case VerdictKind::kRefuted:
      return 1;
    case VerdictKind::kUnknown:
      return 0;
  }
  return 0;
}

std::string describe(const Error& e) {
  return std::string(error_code_name(e.code())) + ": " + e.what();
}

// ---- child processes ---------------------------------------------------------

struct ChildResult {
  std::string response;  // the first line accepted by `accept`
  std::string failure;   // why there is no response
};

void set_nonblocking(int fd) {
  fcntl(fd, F_SETFL, fcntl(fd, F_GETFL) | O_NONBLOCK);
}

// Runs `command` under /bin/sh with `input` on stdin and collects stdout
// until a line satisfying `accept` arrives, the output closes, or the
// deadline passes. The child's process group is killed afterwards.
template <typename Accept>
ChildResult run_child(const std::string& command, const std::string& input,
                      double timeout_seconds, Accept accept) {
  int in_sv[2];
  int out_sv[2];
  if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, in_sv) != 0) {
    return {"", "socketpair failed"};
  }
  if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, out_sv) != 0) {
    close(in_sv[0]);
    close(in_sv[1]);
    return {"", "socketpair failed"};
  }
  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_sv[0], in_sv[1], out_sv[0], out_sv[1]}) close(fd);
    return {"", "fork failed"};
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(in_sv[1], 0);
    dup2(out_sv[1], 1);
    int devnull = open("/dev/null", O_WRONLY);
    if (devnull >= 0) dup2(devnull, 2);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(in_sv[1]);
  close(out_sv[1]);
  int to_child = in_sv[0];
  int from_child = out_sv[0];
  set_nonblocking(to_child);
  set_nonblocking(from_child);

  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(
                                         timeout_seconds));
  ChildResult result;
  std::size_t written = 0;
  std::string buffer;
  bool closed = false;
  while (result.response.empty() && !closed) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (left.count() <= 0) {
      std::ostringstream msg;
      msg << "timed out after " << timeout_seconds << " s";
      result.failure = msg.str();
      break;
    }
    pollfd fds[2] = {{from_child, POLLIN, 0}, {to_child, POLLOUT, 0}};
    nfds_t n = to_child >= 0 ? 2 : 1;
    int ready = poll(fds, n, static_cast<int>(std::min<long long>(
                                 left.count() + 1, 1000)));
    if (ready < 0 && errno != EINTR) {
      result.failure = "poll failed";
      break;
    }
    if (to_child >= 0 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t w = send(to_child, input.data() + written, input.size() - written,
                       MSG_NOSIGNAL);
      if (w > 0) written += static_cast<std::size_t>(w);
      if (w < 0 && errno != EAGAIN && errno != EINTR) written = input.size();
      if (written == input.size()) {
        shutdown(to_child, SHUT_WR);
        close(to_child);
        to_child = -1;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      char chunk[65536];
      ssize_t r = read(from_child, chunk, sizeof chunk);
      if (r == 0) {
        closed = true;
      } else if (r > 0) {
        buffer.append(chunk, static_cast<std::size_t>(r));
        if (buffer.size() > kMaxChildOutput) {
          result.failure = "output limit exceeded";
          break;
        }
      }
      std::size_t nl;
      while (result.response.empty() &&
             ((nl = buffer.find('\n')) != std::string::npos ||
              (closed && !buffer.empty()))) {
        std::string line = buffer.substr(0, nl);
        buffer.erase(0, nl == std::string::npos ? buffer.size() : nl + 1);
        if (accept(line)) result.response = line;
      }
    }
  }
  if (to_child >= 0) close(to_child);
  close(from_child);
  kill(-pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (result.response.empty() && result.failure.empty()) {
    if (WIFEXITED(status) && WEXITSTATUS(status) != 0) {
      result.failure = "exit status " + std::to_string(WEXITSTATUS(status));
    } else if (WIFSIGNALED(status) && WTERMSIG(status) != SIGKILL) {
      result.failure = "killed by signal " + std::to_string(WTERMSIG(status));
    } else {
      result.failure = "no response";
    }
  }
  return result;
}

// ---- attempts ----------------------------------------------------------------

std::vector<AttemptRecord> attempt_builtin(const CorpusEntry& entry,
                                           const BuiltinProver& prover) {
  AttemptRecord rec;
  rec.entry = entry.name();
  auto start = Clock::now();
  ProverConfig config = prover.config;
  config.constants = entry.constants;
  try {
    Verdict v = auto_prove(entry.statement, config);
    rec.verdict = v.kind;
    rec.script = print_script(v.trace);
  } catch (const Error& e) {
    rec.error = describe(e);
  }
  rec.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return {rec};
}

std::vector<AttemptRecord> attempt_external(const CorpusEntry& entry,
                                            const ExternalProver& prover) {
  std::vector<AttemptRecord> out;
  ProverConfig config = prover.config;
  config.constants = entry.constants;
  for (std::size_t i = 0; i < prover.k; ++i) {
    AttemptRecord rec;
    rec.entry = entry.name();
    rec.attempt = i;
    auto start = Clock::now();
    ordered_json request;
    request["id"] = entry.name();
    request["statement"] = entry.text;
    request["k"] = i;
    std::string script;
    auto accept = [&](const std::string& line) {
      try {
        auto j = nlohmann::json::parse(line);
        if (!j.is_object() || !j.contains("id") || !j.contains("script") ||
            j["id"] != entry.name() || !j["script"].is_string()) {
          return false;
        }
        script = j["script"].get<std::string>();
        return true;
      } catch (const nlohmann::json::exception&) {
        return false;
      }
    };
    ChildResult child = run_child(
        prover.command,
        request.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) +
            "\n",
        prover.timeout_seconds, accept);
    if (child.response.empty()) {
      rec.error = std::string(error_code_name(ErrorCode::kExternalProverCrash)) +
                  ": " + child.failure;
    } else {
      rec.script = script;
      try {
        rec.verdict =
            check_derivation(entry.statement, parse_script(script), config).kind;
      } catch (const Error& e) {
        rec.error = describe(e);
      }
    }
    rec.wall_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    out.push_back(rec);
    if (rec.verdict == VerdictKind::kProved) break;
  }
  return out;
}

std::string prover_label(const ProverBinding& binding) {
  if (const auto* e = std::get_if<ExternalProver>(&binding)) return e->command;
  return "builtin";
}

const ProverConfig& binding_config(const ProverBinding& binding) {
  if (const auto* e = std::get_if<ExternalProver>(&binding)) return e->config;
  return std::get<BuiltinProver>(binding).config;
}

std::size_t binding_k(const ProverBinding& binding) {
  if (const auto* e = std::get_if<ExternalProver>(&binding)) return e->k;
  return 1;
}

}  // namespace

BigRational PassCount::rate() const {
  if (total == 0) return BigRational(0);
  return BigRational(BigInt(passes), BigInt(total));
}

PassCount aggregate(const std::vector<PassCount>& parts) {
  PassCount sum;
  for (const auto& p : parts) {
    sum.passes += p.passes;
    sum.total += p.total;
  }
  return sum;
}

std::string format_percent(const BigRational& fraction) {
  return format_fixed(fraction * 100, 2) + "%";
}

std::string format_points(const BigRational& points, int min_digits,
                          int max_digits) {
  for (int d = min_digits; d <= max_digits; ++d) {
    BigRational scaled = points * BigRational(BigInt(boost::multiprecision::pow(BigInt(10), d)));
    if (denominator(scaled) == 1) return format_fixed(points, d);
  }
  return format_fixed(points, max_digits);
}

EvalReport report_from_attempts(const std::vector<CorpusEntry>& corpus,
                                const std::vector<AttemptRecord>& attempts,
                                std::size_t k) {
  EvalReport report;
  report.k = k;
  for (Level l : kLevels) report.levels[l] = {};
  for (Topic t : kCorpusTopics) report.topics[t] = {};
  std::map<std::string, std::vector<const AttemptRecord*>> by_entry;
  for (const auto& a : attempts) {
    if (a.attempt < k) by_entry[a.entry].push_back(&a);
  }
  for (const auto& entry : corpus) {
    EntryOutcome o;
    o.name = entry.name();
    o.level = entry.level();
    o.topic = entry.topic();
    o.expected = entry.expected;
    for (const AttemptRecord* a : by_entry[entry.name()]) {
      ++o.attempts;
      if (a->error.empty() && rank(a->verdict) > rank(o.best)) o.best = a->verdict;
      if (a->error.empty() && a->verdict == VerdictKind::kProved) o.passed = true;
    }
    PassCount& lc = report.levels[o.level];
    PassCount& tc = report.topics[o.topic];
    ++lc.total;
    ++tc.total;
    if (o.passed) {
      ++lc.passes;
      ++tc.passes;
    }
    report.entries.push_back(o);
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const EntryOutcome& a, const EntryOutcome& b) {
              return a.name < b.name;
            });
  std::vector<PassCount> levels;
  for (const auto& [l, c] : report.levels) levels.push_back(c);
  report.overall = aggregate(levels);
  return report;
}

EvalResult run_eval(const std::vector<CorpusEntry>& corpus,
                    const ProverBinding& binding, const EvalOptions& options) {
  std::vector<std::vector<AttemptRecord>> per_entry(corpus.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < corpus.size();) {
      if (const auto* b = std::get_if<BuiltinProver>(&binding)) {
        per_entry[i] = attempt_builtin(corpus[i], *b);
      } else {
        per_entry[i] =
            attempt_external(corpus[i], std::get<ExternalProver>(binding));
      }
    }
  };
  std::size_t workers =
      std::max<std::size_t>(1, std::min(options.workers, corpus.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  EvalResult result;
  for (auto& records : per_entry) {
    for (auto& r : records) result.attempts.push_back(std::move(r));
  }
  std::sort(result.attempts.begin(), result.attempts.end(),
            [](const AttemptRecord& a, const AttemptRecord& b) {
              return std::tie(a.entry, a.attempt) < std::tie(b.entry, b.attempt);
            });
  result.report = report_from_attempts(corpus, result.attempts,
                                       binding_k(binding));
  const ProverConfig& config = binding_config(binding);
  result.report.prover = prover_label(binding);
  for (const auto& [name, value] : config.constants.overrides()) {
    result.report.constants[name] = value.to_string();
  }
  result.report.relative_tolerance =
      config.numeric.relative_tolerance.str(6);
  return result;
}

std::string render_report(const EvalReport& report) {
  std::ostringstream out;
  out << "prover: " << report.prover << "\n";
  out << "k: " << report.k << "\n";
  out << "relative tolerance: " << report.relative_tolerance << "\n";
  for (const auto& [name, value] : report.constants) {
    out << "constant: " << name << " = " << value << "\n";
  }
  std::vector<std::string> titles;
  std::vector<std::string> counts;
  std::vector<std::string> rates;
  for (const auto& [level, c] : report.levels) {
    titles.push_back(level_title(level));
    counts.push_back(ratio(c));
    rates.push_back(format_percent(c.rate()));
  }
  titles.push_back("Overall");
  counts.push_back(ratio(report.overall));
  rates.push_back(format_percent(report.overall.rate()));
  auto row = [](const std::vector<std::string>& cells) {
    std::string s;
    for (const auto& c : cells) s += (s.empty() ? "" : " | ") + c;
    return s;
  };
  out << "levels: " << row(titles) << "\n";
  out << "passes: " << row(counts) << "\n";
  out << "rates:  " << row(rates) << "\n";
  out << "topics:\n";
  for (const auto& [topic, c] : report.topics) {
    out << "  " << topic_name(topic) << ": " << ratio(c) << " "
        << format_percent(c.rate()) << "\n";
  }
  out << "entries:\n";
  for (const auto& e : report.entries) {
    out << "  " << e.name << "  " << level_name(e.level) << "  "
        << topic_name(e.topic) << "  " << tier_name(e.expected) << "  "
        << verdict_name(e.best) << "  " << (e.passed ? "pass" : "fail") << "\n";
  }
  return out.str();
}

std::string report_json(const EvalReport& report) {
  ordered_json j;
  ordered_json config;
  config["prover"] = report.prover;
  config["k"] = report.k;
  config["relative_tolerance"] = report.relative_tolerance;
  config["constants"] = ordered_json::object();
  for (const auto& [name, value] : report.constants) {
    config["constants"][name] = value;
  }
  j["config"] = config;
  j["levels"] = ordered_json::object();
  for (const auto& [level, c] : report.levels) {
    j["levels"][std::string(level_name(level))] = count_json(c);
  }
  j["topics"] = ordered_json::object();
  for (const auto& [topic, c] : report.topics) {
    j["topics"][std::string(topic_name(topic))] = count_json(c);
  }
  j["overall"] = count_json(report.overall);
  j["entries"] = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json o;
    o["name"] = e.name;
    o["level"] = level_name(e.level);
    o["topic"] = topic_name(e.topic);
    o["expected"] = tier_name(e.expected);
    o["verdict"] = verdict_name(e.best);
    o["passed"] = e.passed;
    o["attempts"] = e.attempts;
    j["entries"].push_back(o);
  }
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::string attempt_log_jsonl(const std::vector<AttemptRecord>& attempts) {
  std::string out;
  for (const auto& a : attempts) {
    ordered_json j;
    j["entry"] = a.entry;
    j["attempt"] = a.attempt;
    j["verdict"] = verdict_name(a.verdict);
    j["error"] = a.error;
    j["script"] = a.script;
    j["wall_ms"] = static_cast<long long>(a.wall_seconds * 1000 + 0.5);
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

// ---- published results ---------------------------------------------------------

ResultsTable load_results_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kValidation, path.string() + ": " + e.what());
  }
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::kValidation, path.string() + ": " + msg);
  };
  ResultsTable table;
  std::size_t overall_total = 0;
  try {
    for (const auto& [name, total] : j.at("level_totals").items()) {
      auto level = parse_level(name);
      if (!level) fail("unknown level '" + name + "'");
      table.level_totals[*level] = total.get<std::size_t>();
      overall_total += total.get<std::size_t>();
    }
    auto cell = [&](const std::string& text, std::size_t total) {
      std::string digits = text;
      if (digits.empty() || digits.back() != '%') fail("bad cell '" + text + "'");
      digits.pop_back();
      if (!parse_decimal(digits)) fail("bad cell '" + text + "'");
      for (std::size_t c = 0; c <= total; ++c) {
        BigRational f = total ? BigRational(BigInt(c), BigInt(total))
                              : BigRational(0);
        if (format_percent(f) == text) return f;
      }
      fail("no count out of " + std::to_string(total) + " renders as " + text);
      return BigRational(0);
    };
    for (const auto& m : j.at("models")) {
      for (const char* mode : {"with", "without"}) {
        ModelRow row;
        row.model = m.at("model").get<std::string>();
        const auto& cells = m.at(mode);
        for (const auto& [level, total] : table.level_totals) {
          row.levels[level] =
              cell(cells.at(std::string(level_name(level))).get<std::string>(),
                   total);
        }
        row.overall = cell(cells.at("overall").get<std::string>(), overall_total);
        (std::string(mode) == "with" ? table.with_library
                                     : table.without_library)
            .push_back(row);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
  return table;
}

ResultsTable swap_overall(ResultsTable table, const std::string& model) {
  auto find = [&](std::vector<ModelRow>& rows) -> ModelRow& {
    for (auto& r : rows) {
      if (r.model == model) return r;
    }
    throw Error(ErrorCode::kValidation, "unknown model '" + model + "'");
  };
  std::swap(find(table.with_library).overall,
            find(table.without_library).overall);
  return table;
}

DeltaReport improvement_delta(const std::vector<ModelRow>& with,
                              const std::vector<ModelRow>& without) {
  if (with.size() != without.size()) {
    throw Error(ErrorCode::kValidation, "model lists differ in length");
  }
  DeltaReport report;
  BigRational sum(0);
  for (const auto& w : with) {
    auto it = std::find_if(without.begin(), without.end(),
                           [&](const ModelRow& r) { return r.model == w.model; });
    if (it == without.end()) {
      throw Error(ErrorCode::kValidation,
                  "model '" + w.model + "' missing from the baseline");
    }
    BigRational points = (w.overall - it->overall) * 100;
    report.deltas.emplace_back(w.model, points);
    sum += points;
  }
  if (!with.empty()) {
    report.mean = sum / BigRational(static_cast<long long>(with.size()));
  }
  return report;
}

}  // namespace physk
