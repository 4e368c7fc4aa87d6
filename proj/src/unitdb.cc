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

#include "physk/unitdb.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "physk/error.h"

namespace physk {
namespace {

// Exponents in BaseDim order: T L M I Θ N J.
Dimension dim(int t, int l, int m, int i = 0, int th = 0, int n = 0,
              int j = 0) {
  Dimension::Exponents e{SmallRational(t),  SmallRational(l),
                         SmallRational(m),  SmallRational(i),
                         SmallRational(th), SmallRational(n),
                         SmallRational(j)};
  return Dimension(e);
}

BigRational rat(const char* text) { return *parse_rational(text); }

using Basis = std::vector<std::pair<std::string, int>>;

std::vector<UnitDef> builtin_units() {
  const Topic F = Topic::kFoundation;
  const Topic Me = Topic::kMechanics;
  const Topic W = Topic::kWavesAcoustics;
  const Topic Th = Topic::kThermodynamics;
  const Topic E = Topic::kElectromagnetism;
  const Topic O = Topic::kOptics;
  const Topic Mo = Topic::kModernPhysics;
  return {
      {"second", dim(1, 0, 0), 1, F, {}},
      {"meter", dim(0, 1, 0), 1, F, {}},
      {"kilogram", dim(0, 0, 1), 1, F, {}},
      {"ampere", dim(0, 0, 0, 1), 1, F, {}},
      {"kelvin", dim(0, 0, 0, 0, 1), 1, F, {}},
      {"mole", dim(0, 0, 0, 0, 0, 1), 1, F, {}},
      {"candela", dim(0, 0, 0, 0, 0, 0, 1), 1, F, {}},

      {"newton", dim(-2, 1, 1), 1, Me,
       {{"kilogram", 1}, {"meter", 1}, {"second", -2}}},
      {"pascal", dim(-2, -1, 1), 1, Me,
       {{"kilogram", 1}, {"meter", -1}, {"second", -2}}},
      {"joule", dim(-2, 2, 1), 1, Me,
       {{"kilogram", 1}, {"meter", 2}, {"second", -2}}},
      {"watt", dim(-3, 2, 1), 1, Me,
       {{"kilogram", 1}, {"meter", 2}, {"second", -3}}},
      {"gram", dim(0, 0, 1), rat("1/1000"), Me, {{"kilogram", 1}}},
      {"minute", dim(1, 0, 0), 60, Me, {{"second", 1}}},
      {"hour", dim(1, 0, 0), 3600, Me, {{"second", 1}}},
      {"liter", dim(0, 3, 0), rat("1/1000"), Me, {{"meter", 3}}},

      {"hertz", dim(-1, 0, 0), 1, W, {{"second", -1}}},

      {"atmosphere", dim(-2, -1, 1), 101325, Th,
       {{"kilogram", 1}, {"meter", -1}, {"second", -2}}},
      {"calorie", dim(-2, 2, 1), rat("4.184"), Th,
       {{"kilogram", 1}, {"meter", 2}, {"second", -2}}},

      {"coulomb", dim(1, 0, 0, 1), 1, E, {{"ampere", 1}, {"second", 1}}},
      {"volt", dim(-3, 2, 1, -1), 1, E,
       {{"kilogram", 1}, {"meter", 2}, {"second", -3}, {"ampere", -1}}},
      {"farad", dim(4, -2, -1, 2), 1, E,
       {{"kilogram", -1}, {"meter", -2}, {"second", 4}, {"ampere", 2}}},
      {"ohm", dim(-3, 2, 1, -2), 1, E,
       {{"kilogram", 1}, {"meter", 2}, {"second", -3}, {"ampere", -2}}},
      {"siemens", dim(3, -2, -1, 2), 1, E,
       {{"kilogram", -1}, {"meter", -2}, {"second", 3}, {"ampere", 2}}},
      {"tesla", dim(-2, 0, 1, -1), 1, E,
       {{"kilogram", 1}, {"second", -2}, {"ampere", -1}}},
      {"weber", dim(-2, 2, 1, -1), 1, E,
       {{"kilogram", 1}, {"meter", 2}, {"second", -2}, {"ampere", -1}}},
      {"henry", dim(-2, 2, 1, -2), 1, E,
       {{"kilogram", 1}, {"meter", 2}, {"second", -2}, {"ampere", -2}}},

      {"lumen", dim(0, 0, 0, 0, 0, 0, 1), 1, O, {{"candela", 1}}},
      {"lux", dim(0, -2, 0, 0, 0, 0, 1), 1, O,
       {{"candela", 1}, {"meter", -2}}},
      {"diopter", dim(0, -1, 0), 1, O, {{"meter", -1}}},

      {"electronvolt", dim(-2, 2, 1), rat("1.602176634e-19"), Mo,
       {{"kilogram", 1}, {"meter", 2}, {"second", -2}}},
      {"becquerel", dim(-1, 0, 0), 1, Mo, {{"second", -1}}},
  };
}

std::vector<PrefixDef> builtin_prefixes() {
  return {
      {"yocto", -24}, {"zepto", -21}, {"atto", -18}, {"femto", -15},
      {"pico", -12},  {"nano", -9},   {"micro", -6}, {"milli", -3},
      {"centi", -2},  {"deci", -1},   {"deca", 1},   {"hecto", 2},
      {"kilo", 3},    {"mega", 6},    {"giga", 9},   {"tera", 12},
      {"peta", 15},   {"exa", 18},    {"zetta", 21}, {"yotta", 24},
  };
}

std::vector<ConstantDef> builtin_constants() {
  return {
      {"g", Quantity(rat("49/5"), dim(-2, 1, 0)),
       "standard gravity rounded to 9.8 m/s^2", true, Topic::kMechanics},
      {"K", Quantity(rat("9e9"), dim(-4, 3, 1, -2)),
       "Coulomb constant rounded to 9e9 N m^2/C^2", true,
       Topic::kElectromagnetism},
  };
}

std::vector<KindAlias> builtin_kinds() {
  const Topic F = Topic::kFoundation;
  const Topic Me = Topic::kMechanics;
  const Topic W = Topic::kWavesAcoustics;
  const Topic Th = Topic::kThermodynamics;
  const Topic E = Topic::kElectromagnetism;
  const Topic O = Topic::kOptics;
  return {
      {"Real", Dimension(), F},
      {"Int", Dimension(), F},
      {"Dimensionless", Dimension(), F},
      {"Angle", Dimension(), Me},
      {"Time", dim(1, 0, 0), F},
      {"Length", dim(0, 1, 0), F},
      {"Mass", dim(0, 0, 1), F},
      {"Current", dim(0, 0, 0, 1), F},
      {"Temperature", dim(0, 0, 0, 0, 1), F},
      {"Amount", dim(0, 0, 0, 0, 0, 1), F},
      {"LuminousIntensity", dim(0, 0, 0, 0, 0, 0, 1), F},
      {"Area", dim(0, 2, 0), Me},
      {"Volume", dim(0, 3, 0), Me},
      {"Speed", dim(-1, 1, 0), Me},
      {"Velocity", dim(-1, 1, 0), Me},
      {"Acceleration", dim(-2, 1, 0), Me},
      {"Force", dim(-2, 1, 1), Me},
      {"Momentum", dim(-1, 1, 1), Me},
      {"Pressure", dim(-2, -1, 1), Me},
      {"Energy", dim(-2, 2, 1), Me},
      {"Work", dim(-2, 2, 1), Me},
      {"Power", dim(-3, 2, 1), Me},
      {"Density", dim(0, -3, 1), Me},
      {"AngularVelocity", dim(-1, 0, 0), Me},
      {"Frequency", dim(-1, 0, 0), W},
      {"Wavelength", dim(0, 1, 0), W},
      {"HeatCapacity", dim(-2, 2, 1, 0, -1), Th},
      {"SpecificHeat", dim(-2, 2, 0, 0, -1), Th},
      {"Charge", dim(1, 0, 0, 1), E},
      {"Voltage", dim(-3, 2, 1, -1), E},
      {"Capacitance", dim(4, -2, -1, 2), E},
      {"Resistance", dim(-3, 2, 1, -2), E},
      {"ElectricField", dim(-3, 1, 1, -1), E},
      {"MagneticField", dim(-2, 0, 1, -1), E},
      {"Illuminance", dim(0, -2, 0, 0, 0, 0, 1), O},
  };
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <typename T>
const T* find_by_name(const std::vector<T>& items, std::string_view name) {
  for (const auto& item : items) {
    if (item.name == name) return &item;
  }
  return nullptr;
}

}  // namespace

std::string_view topic_name(Topic topic) {
  switch (topic) {
    case Topic::kFoundation: return "foundation";
    case Topic::kMechanics: return "mechanics";
    case Topic::kWavesAcoustics: return "waves-acoustics";
    case Topic::kThermodynamics: return "thermodynamics";
    case Topic::kElectromagnetism: return "electromagnetism";
    case Topic::kOptics: return "optics";
    case Topic::kModernPhysics: return "modern-physics";
  }
  return "foundation";
}

std::optional<Topic> parse_topic(std::string_view name) {
  for (Topic t : {Topic::kFoundation, Topic::kMechanics, Topic::kWavesAcoustics,
                  Topic::kThermodynamics, Topic::kElectromagnetism,
                  Topic::kOptics, Topic::kModernPhysics}) {
    if (topic_name(t) == name) return t;
  }
  return std::nullopt;
}

BigRational PrefixDef::factor() const {
  BigRational ten_pow{boost::multiprecision::pow(
      BigInt(10), static_cast<unsigned>(power_of_ten < 0 ? -power_of_ten
                                                         : power_of_ten))};
  return power_of_ten < 0 ? BigRational(1 / ten_pow) : ten_pow;
}

const Quantity& ConstantTable::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) {
    throw Error(ErrorCode::kUnknownIdentifier, "unknown constant '" + name + "'");
  }
  return it->second;
}

void ConstantTable::override_value(const std::string& name,
                                   const NumericValue& value) {
  auto it = values_.find(name);
  if (it == values_.end()) {
    throw Error(ErrorCode::kUnknownIdentifier,
                "cannot override unknown constant '" + name + "'");
  }
  it->second = Quantity(value, it->second.dim());
  overrides_[name] = value;
}

UnitDb::UnitDb(std::vector<UnitDef> units, std::vector<PrefixDef> prefixes,
               std::vector<ConstantDef> constants,
               std::vector<KindAlias> kinds)
    : units_(std::move(units)),
      prefixes_(std::move(prefixes)),
      constants_(std::move(constants)),
      kinds_(std::move(kinds)) {
  std::set<std::string> seen;
  auto claim = [&seen](const std::string& name) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kValidation, "duplicate name '" + name + "'");
    }
  };
  for (const auto& u : units_) claim(u.name);
  for (const auto& p : prefixes_) {
    claim(p.name);
    if (p.power_of_ten < -24 || p.power_of_ten > 24) {
      throw Error(ErrorCode::kValidation,
                  "prefix '" + p.name + "' outside 10^-24..10^24");
    }
  }
  for (const auto& c : constants_) claim(c.name);
  for (const auto& k : kinds_) claim(k.name);
}

const UnitDb& UnitDb::standard() {
  static const UnitDb db(builtin_units(), builtin_prefixes(),
                         builtin_constants(), builtin_kinds());
  return db;
}

const UnitDef* UnitDb::find_unit(std::string_view name) const {
  return find_by_name(units_, name);
}
const PrefixDef* UnitDb::find_prefix(std::string_view name) const {
  return find_by_name(prefixes_, name);
}
const ConstantDef* UnitDb::find_constant(std::string_view name) const {
  return find_by_name(constants_, name);
}
const KindAlias* UnitDb::find_kind(std::string_view name) const {
  return find_by_name(kinds_, name);
}

std::vector<std::string> UnitDb::near_matches(std::string_view name) const {
  std::vector<std::pair<std::size_t, std::string>> scored;
  auto consider = [&](const std::string& candidate) {
    std::size_t d = edit_distance(name, candidate);
    if (d <= 2) scored.emplace_back(d, candidate);
  };
  for (const auto& u : units_) consider(u.name);
  for (const auto& p : prefixes_) consider(p.name);
  for (const auto& c : constants_) consider(c.name);
  for (const auto& k : kinds_) consider(k.name);
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (auto& [d, n] : scored) out.push_back(std::move(n));
  return out;
}

void UnitDb::unknown(std::string_view what, std::string_view name) const {
  std::string msg = "unknown " + std::string(what) + " '" + std::string(name) +
                    "'";
  auto near = near_matches(name);
  if (!near.empty()) {
    msg += "; did you mean ";
    for (std::size_t i = 0; i < near.size(); ++i) {
      if (i > 0) msg += ", ";
      msg += near[i];
    }
    msg += "?";
  }
  throw Error(ErrorCode::kUnknownIdentifier, msg);
}

Quantity UnitDb::lookup_unit(std::string_view name) const {
  const UnitDef* u = find_unit(name);
  if (u == nullptr) unknown("unit", name);
  return Quantity(u->scale, u->dim);
}

Quantity UnitDb::apply_prefix(std::string_view prefix,
                              const Quantity& q) const {
  const PrefixDef* p = find_prefix(prefix);
  if (p == nullptr) unknown("prefix", prefix);
  return q_smul(p->factor(), q);
}

Quantity UnitDb::lookup_constant(std::string_view name) const {
  const ConstantDef* c = find_constant(name);
  if (c == nullptr) unknown("constant", name);
  return c->quantity;
}

Dimension UnitDb::lookup_kind(std::string_view name) const {
  const KindAlias* k = find_kind(name);
  if (k == nullptr) unknown("kind", name);
  return k->dim;
}

ConstantTable UnitDb::constants() const {
  ConstantTable table;
  for (const auto& c : constants_) table.values_[c.name] = c.quantity;
  return table;
}

std::string UnitDb::render_table() const {
  std::ostringstream out;
  out << "# Unit table\n\n## Units\n\n"
      << "| name | dimension | scale | topic |\n|---|---|---|---|\n";
  for (const auto& u : units_) {
    out << "| " << u.name << " | " << u.dim.to_string() << " | "
        << to_string(u.scale) << " | " << topic_name(u.topic) << " |\n";
  }
  out << "\n## Prefixes\n\n| name | factor |\n|---|---|\n";
  for (const auto& p : prefixes_) {
    out << "| " << p.name << " | 10^" << p.power_of_ten << " |\n";
  }
  out << "\n## Constants\n\n"
      << "| name | value | dimension | topic | configurable | provenance |\n"
      << "|---|---|---|---|---|---|\n";
  for (const auto& c : constants_) {
    out << "| " << c.name << " | " << c.quantity.val().to_string() << " | "
        << c.quantity.dim().to_string() << " | " << topic_name(c.topic)
        << " | " << (c.configurable ? "yes" : "no") << " | " << c.provenance
        << " |\n";
  }
  out << "\n## Kinds\n\n| name | dimension | topic |\n|---|---|---|\n";
  for (const auto& k : kinds_) {
    out << "| " << k.name << " | " << k.dim.to_string() << " | "
        << topic_name(k.topic) << " |\n";
  }
  return out.str();
}

}  // namespace physk
