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

#ifndef PHYSK_CORPUS_H_
#define PHYSK_CORPUS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "physk/ast.h"
#include "physk/unitdb.h"

namespace physk {

/// What the checker is expected to achieve on an entry.
enum class Tier { kProvableByAuto, kScriptRequired, kDimCheckOnly };

/// "provable-by-auto", "script-required", "dim-check-only".
std::string_view tier_name(Tier tier);
std::optional<Tier> parse_tier(std::string_view name);

struct CorpusEntry {
  Statement statement;
  std::filesystem::path path;
  std::string text;  // file contents as loaded
  Tier expected = Tier::kDimCheckOnly;
  /// Base table with the entry's front-matter overrides on top.
  ConstantTable constants;

  const std::string& name() const { return statement.name; }
  Level level() const { return *statement.meta.level; }
  Topic topic() const { return *statement.meta.topic; }
  const std::string& source() const { return statement.meta.source; }
};

/// One manifest row.
struct ManifestRow {
  std::string name;
  Level level = Level::kCollege;
  Topic topic = Topic::kMechanics;
  Tier tier = Tier::kDimCheckOnly;
};

/// Name of the manifest at the corpus root. Tab-separated
/// `name level topic tier`; `#` starts a comment line.
inline constexpr std::string_view kManifestFile = "manifest.tsv";

/// Throws kValidation listing every bad line.
std::vector<ManifestRow> parse_manifest(std::string_view text);

/// Loads `<dir>/<topic>/<name>.phys` files, sorted by name.
///
/// Every entry needs a level, a topic matching its directory, and a
/// manifest row agreeing with both. Parse and validation errors from all
/// files are collected and thrown together as kValidation, one
/// `path: message` per line. An empty directory without a manifest gives an
/// empty corpus.
std::vector<CorpusEntry> load_corpus(
    const std::filesystem::path& dir,
    const ConstantTable& base = UnitDb::standard().constants(),
    const UnitDb& db = UnitDb::standard());

struct CorpusStats {
  std::map<Level, std::size_t> by_level;  // every level present, maybe 0
  std::map<Topic, std::size_t> by_topic;  // every corpus topic, maybe 0
  std::size_t total = 0;

  std::size_t competition() const {
    return by_level.at(Level::kCompEasy) + by_level.at(Level::kCompHard);
  }
};

CorpusStats corpus_stats(const std::vector<CorpusEntry>& entries);

}  // namespace physk

#endif  // PHYSK_CORPUS_H_
