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

#include "physk/dimension.h"

#include <sstream>
#include <vector>

namespace physk {
namespace {

// Rendering order differs from storage order: mass first, as in M L T I.
constexpr std::array<BaseDim, kNumBaseDims> kRenderOrder = {
    BaseDim::kMass,        BaseDim::kLength, BaseDim::kTime,
    BaseDim::kCurrent,     BaseDim::kTemperature,
    BaseDim::kAmount,      BaseDim::kLuminousIntensity,
};

}  // namespace

std::string_view base_dim_symbol(BaseDim dim) {
  switch (dim) {
    case BaseDim::kTime: return "T";
    case BaseDim::kLength: return "L";
    case BaseDim::kMass: return "M";
    case BaseDim::kCurrent: return "I";
    case BaseDim::kTemperature: return "Θ";
    case BaseDim::kAmount: return "N";
    case BaseDim::kLuminousIntensity: return "J";
  }
  return "?";
}

Dimension Dimension::base(BaseDim dim, SmallRational exponent) {
  Exponents e{};
  e[static_cast<std::size_t>(dim)] = exponent;
  return Dimension(e);
}

bool Dimension::is_dimensionless() const {
  for (const auto& e : exponents_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

std::string Dimension::to_string() const {
  std::string out;
  for (BaseDim d : kRenderOrder) {
    const SmallRational& e = (*this)[d];
    if (e.is_zero()) continue;
    if (!out.empty()) out += ' ';
    out += base_dim_symbol(d);
    out += '^';
    out += e.to_string();
  }
  return out.empty() ? "1" : out;
}

std::optional<Dimension> Dimension::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  Exponents e{};
  bool any = false;
  while (in >> token) {
    if (token == "1" && !any) {
      any = true;
      continue;
    }
    auto caret = token.find('^');
    if (caret == std::string::npos) return std::nullopt;
    std::string_view symbol(token.data(), caret);
    auto exponent = SmallRational::parse(token.substr(caret + 1));
    if (!exponent) return std::nullopt;
    bool matched = false;
    for (BaseDim d : kRenderOrder) {
      if (base_dim_symbol(d) == symbol) {
        e[static_cast<std::size_t>(d)] =
            e[static_cast<std::size_t>(d)] + *exponent;
        matched = true;
      }
    }
    if (!matched) return std::nullopt;
    any = true;
  }
  if (!any) return std::nullopt;
  return Dimension(e);
}

Dimension dim_combine(const Dimension& a, const Dimension& b) {
  Dimension::Exponents e{};
  for (std::size_t i = 0; i < kNumBaseDims; ++i) {
    e[i] = a.exponents()[i] + b.exponents()[i];
  }
  return Dimension(e);
}

Dimension dim_invert(const Dimension& a) {
  Dimension::Exponents e{};
  for (std::size_t i = 0; i < kNumBaseDims; ++i) e[i] = -a.exponents()[i];
  return Dimension(e);
}

Dimension dim_scale(const Dimension& a, SmallRational q) {
  Dimension::Exponents e{};
  for (std::size_t i = 0; i < kNumBaseDims; ++i) e[i] = a.exponents()[i] * q;
  return Dimension(e);
}

bool dim_eq(const Dimension& a, const Dimension& b) { return a == b; }

std::size_t DimensionHash::operator()(const Dimension& d) const {
  std::size_t h = 0;
  for (const auto& e : d.exponents()) {
    h = h * 1000003u ^ std::hash<std::int64_t>()(e.num());
    h = h * 1000003u ^ std::hash<std::int64_t>()(e.den());
  }
  return h;
}

}  // namespace physk
