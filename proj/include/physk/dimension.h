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

#ifndef PHYSK_DIMENSION_H_
#define PHYSK_DIMENSION_H_

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "physk/rational.h"

namespace physk {

/// The seven SI base dimensions. The enumerator value is the index into
/// Dimension's exponent vector and never changes.
enum class BaseDim : std::size_t {
  kTime = 0,
  kLength = 1,
  kMass = 2,
  kCurrent = 3,
  kTemperature = 4,
  kAmount = 5,
  kLuminousIntensity = 6,
};

inline constexpr std::size_t kNumBaseDims = 7;

/// Rendering symbol: T, L, M, I, Θ, N, J.
std::string_view base_dim_symbol(BaseDim dim);

/// Element of the free abelian group (over Q) generated by the base
/// dimensions. Immutable value type.
class Dimension {
 public:
  using Exponents = std::array<SmallRational, kNumBaseDims>;

  /// The dimensionless element.
  Dimension() = default;
  explicit Dimension(const Exponents& exponents) : exponents_(exponents) {}

  static Dimension base(BaseDim dim, SmallRational exponent = 1);
  static Dimension dimensionless() { return Dimension(); }

  const SmallRational& operator[](BaseDim dim) const {
    return exponents_[static_cast<std::size_t>(dim)];
  }
  const Exponents& exponents() const { return exponents_; }

  bool is_dimensionless() const;

  /// Canonical text "M^a L^b T^c I^d Θ^e N^f J^g" with zero exponents
  /// omitted; "1" for the dimensionless element.
  std::string to_string() const;
  static std::optional<Dimension> parse(std::string_view text);

  friend bool operator==(const Dimension&, const Dimension&) = default;

 private:
  Exponents exponents_{};
};

/// Exponentwise sum: the dimension of a product.
Dimension dim_combine(const Dimension& a, const Dimension& b);
/// Exponentwise negation: the dimension of a reciprocal.
Dimension dim_invert(const Dimension& a);
/// Scales every exponent by q: the dimension of a power.
Dimension dim_scale(const Dimension& a, SmallRational q);
bool dim_eq(const Dimension& a, const Dimension& b);

/// a ⊕ (⊖ b), the dimension of a quotient.
inline Dimension dim_divide(const Dimension& a, const Dimension& b) {
  return dim_combine(a, dim_invert(b));
}

inline Dimension operator*(const Dimension& a, const Dimension& b) {
  return dim_combine(a, b);
}
inline Dimension operator/(const Dimension& a, const Dimension& b) {
  return dim_divide(a, b);
}

struct DimensionHash {
  std::size_t operator()(const Dimension& d) const;
};

}  // namespace physk

#endif  // PHYSK_DIMENSION_H_
