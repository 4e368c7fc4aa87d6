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

#ifndef PHYSK_UNITDB_H_
#define PHYSK_UNITDB_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "physk/dimension.h"
#include "physk/quantity.h"

namespace physk {

/// Topic namespaces. kFoundation tags the SI base units, which belong to
/// no single topic; corpus entries must use one of the six others.
enum class Topic {
  kFoundation,
  kMechanics,
  kWavesAcoustics,
  kThermodynamics,
  kElectromagnetism,
  kOptics,
  kModernPhysics,
};

inline constexpr Topic kCorpusTopics[] = {
    Topic::kMechanics,        Topic::kWavesAcoustics, Topic::kThermodynamics,
    Topic::kElectromagnetism, Topic::kOptics,         Topic::kModernPhysics,
};

/// "mechanics", "waves-acoustics", ..., "foundation".
std::string_view topic_name(Topic topic);
std::optional<Topic> parse_topic(std::string_view name);

struct UnitDef {
  std::string name;
  Dimension dim;
  BigRational scale;  // multiplier into coherent SI; 1 for coherent units
  Topic topic;
  /// Base-unit decomposition, e.g. {{"kilogram",1},{"meter",1},
  /// {"second",-2}} for newton. Empty for the seven base units.
  std::vector<std::pair<std::string, int>> basis;
};

struct PrefixDef {
  std::string name;
  int power_of_ten;

  BigRational factor() const;
};

struct ConstantDef {
  std::string name;
  Quantity quantity;
  std::string provenance;
  bool configurable = true;
  Topic topic;
};

struct KindAlias {
  std::string name;
  Dimension dim;
  Topic topic;
};

/// Constant values in effect for one checker run: database defaults with
/// overrides applied. Overrides are kept so reports can echo them.
class ConstantTable {
 public:
  ConstantTable() = default;

  const Quantity& get(const std::string& name) const;
  bool contains(const std::string& name) const {
    return values_.count(name) > 0;
  }
  const std::map<std::string, Quantity>& values() const { return values_; }
  const std::map<std::string, NumericValue>& overrides() const {
    return overrides_;
  }

  /// Replaces the value (coherent SI) of an existing constant. The
  /// dimension stays the database's. Throws kUnknownIdentifier.
  void override_value(const std::string& name, const NumericValue& value);

 private:
  friend class UnitDb;
  std::map<std::string, Quantity> values_;
  std::map<std::string, NumericValue> overrides_;
};

/// Named units, prefixes, constants and quantity kinds. Built once and
/// read-only afterwards, so one instance can be shared between threads.
class UnitDb {
 public:
  /// The built-in SI database.
  static const UnitDb& standard();

  const UnitDef* find_unit(std::string_view name) const;
  const PrefixDef* find_prefix(std::string_view name) const;
  const ConstantDef* find_constant(std::string_view name) const;
  const KindAlias* find_kind(std::string_view name) const;

  // The lookup_* operations throw kUnknownIdentifier, listing near matches.
  Quantity lookup_unit(std::string_view name) const;
  Quantity apply_prefix(std::string_view prefix, const Quantity& q) const;
  Quantity lookup_constant(std::string_view name) const;
  Dimension lookup_kind(std::string_view name) const;

  /// Names within edit distance 2 of `name`, across all tables.
  std::vector<std::string> near_matches(std::string_view name) const;

  ConstantTable constants() const;

  const std::vector<UnitDef>& units() const { return units_; }
  const std::vector<PrefixDef>& prefixes() const { return prefixes_; }
  const std::vector<ConstantDef>& constant_defs() const { return constants_; }
  const std::vector<KindAlias>& kinds() const { return kinds_; }

  /// Markdown document listing every unit, prefix, constant and kind.
  std::string render_table() const;

  UnitDb(std::vector<UnitDef> units, std::vector<PrefixDef> prefixes,
         std::vector<ConstantDef> constants, std::vector<KindAlias> kinds);

 private:
  [[noreturn]] void unknown(std::string_view what,
                            std::string_view name) const;

  std::vector<UnitDef> units_;
  std::vector<PrefixDef> prefixes_;
  std::vector<ConstantDef> constants_;
  std::vector<KindAlias> kinds_;
};

}  // namespace physk

#endif  // PHYSK_UNITDB_H_
