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

#include "physk/corpus.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "physk/error.h"
#include "physk/evaluator.h"
#include "physk/lang.h"

namespace physk {
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) {
    if (!field.empty()) out.push_back(field);
  }
  return out;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += '\n';
    out += l;
  }
  return out;
}

}  // namespace

std::string_view tier_name(Tier tier) {
  switch (tier) {
    case Tier::kProvableByAuto:
      return "provable-by-auto";
    case Tier::kScriptRequired:
      return "script-required";
    case Tier::kDimCheckOnly:
      return "dim-check-only";
  }
  return "";
}

std::optional<Tier> parse_tier(std::string_view name) {
  for (Tier t : {Tier::kProvableByAuto, Tier::kScriptRequired,
                 Tier::kDimCheckOnly}) {
    if (tier_name(t) == name) return t;
  }
  return std::nullopt;
}

std::vector<ManifestRow> parse_manifest(std::string_view text) {
  std::vector<ManifestRow> rows;
  std::vector<std::string> errors;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') {
      continue;
    }
    auto where = "line " + std::to_string(no) + ": ";
    auto f = split_tabs(line);
    if (f.size() != 4) {
      errors.push_back(where + "expected 4 tab-separated fields");
      continue;
    }
    auto level = parse_level(f[1]);
    auto topic = parse_topic(f[2]);
    auto tier = parse_tier(f[3]);
    if (!level) errors.push_back(where + "unknown level '" + f[1] + "'");
    if (!topic || *topic == Topic::kFoundation) {
      errors.push_back(where + "unknown topic '" + f[2] + "'");
      topic.reset();
    }
    if (!tier) errors.push_back(where + "unknown tier '" + f[3] + "'");
    if (!seen.insert(f[0]).second) {
      errors.push_back(where + "duplicate entry '" + f[0] + "'");
    }
    if (level && topic && tier) rows.push_back({f[0], *level, *topic, *tier});
  }
  if (!errors.empty()) throw Error(ErrorCode::kValidation, join(errors));
  return rows;
}

std::vector<CorpusEntry> load_corpus(const fs::path& dir,
                                     const ConstantTable& base,
                                     const UnitDb& db) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, dir.string() + ": not a directory");
  }
  std::vector<std::string> errors;
  std::map<std::string, ManifestRow> manifest;
  bool has_manifest = fs::exists(dir / kManifestFile);
  if (has_manifest) {
    try {
      for (auto& row : parse_manifest(read_all(dir / kManifestFile))) {
        manifest[row.name] = row;
      }
    } catch (const Error& e) {
      std::istringstream lines(e.what());
      std::string l;
      while (std::getline(lines, l)) {
        errors.push_back((dir / kManifestFile).string() + ": " + l);
      }
    }
  }

  std::vector<fs::path> files;
  for (const auto& f : fs::recursive_directory_iterator(dir)) {
    if (f.is_regular_file() && f.path().extension() == ".phys") {
      files.push_back(f.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<CorpusEntry> entries;
  std::map<std::string, fs::path> names;
  for (const auto& path : files) {
    auto fail = [&](const std::string& msg) {
      errors.push_back(path.string() + ": " + msg);
    };
    CorpusEntry entry;
    entry.path = path;
    try {
      entry.text = read_all(path);
      entry.statement = parse_statement(entry.text, db);
      entry.constants = constants_for(entry.statement, base);
    } catch (const Error& e) {
      fail(e.what());
      continue;
    }
    const Statement& s = entry.statement;
    std::size_t before = errors.size();
    if (path.stem() != s.name) {
      fail("file name differs from theorem name '" + s.name + "'");
    }
    auto [prev, fresh] = names.emplace(s.name, path);
    if (!fresh) fail("duplicate entry '" + s.name + "', also in " +
                     prev->second.string());
    if (!s.meta.level) fail("missing level");
    if (!s.meta.topic) fail("missing topic");
    fs::path rel = fs::relative(path, dir);
    if (s.meta.topic &&
        (rel.begin() == rel.end() ||
         rel.begin()->string() != topic_name(*s.meta.topic) ||
         std::distance(rel.begin(), rel.end()) != 2)) {
      fail("expected under " + std::string(topic_name(*s.meta.topic)) + "/");
    }
    auto row = manifest.find(s.name);
    if (row == manifest.end()) {
      fail("no manifest row");
    } else {
      if (s.meta.level && row->second.level != *s.meta.level) {
        fail("level differs from manifest");
      }
      if (s.meta.topic && row->second.topic != *s.meta.topic) {
        fail("topic differs from manifest");
      }
      entry.expected = row->second.tier;
    }
    if (errors.size() == before) entries.push_back(std::move(entry));
  }
  for (const auto& [name, row] : manifest) {
    if (!names.count(name)) {
      errors.push_back((dir / kManifestFile).string() + ": entry '" + name +
                       "' has no file");
    }
  }
  if (!errors.empty()) throw Error(ErrorCode::kValidation, join(errors));
  std::sort(entries.begin(), entries.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) {
              return a.name() < b.name();
            });
  return entries;
}

CorpusStats corpus_stats(const std::vector<CorpusEntry>& entries) {
  CorpusStats stats;
  for (Level l : kLevels) stats.by_level[l] = 0;
  for (Topic t : kCorpusTopics) stats.by_topic[t] = 0;
  for (const auto& e : entries) {
    ++stats.by_level[e.level()];
    ++stats.by_topic[e.topic()];
    ++stats.total;
  }
  return stats;
}

}  // namespace physk
