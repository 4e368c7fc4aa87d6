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

#ifndef PHYSK_QUANTITY_H_
#define PHYSK_QUANTITY_H_

#include <string>

#include "physk/dimension.h"
#include "physk/numeric.h"

namespace physk {

/// A numeric value tagged with its dimension. Values are expressed in
/// coherent SI units, so the value of `1 • kilometer` is 1000.
class Quantity {
 public:
  Quantity() = default;
  Quantity(NumericValue val, Dimension dim)
      : val_(std::move(val)), dim_(dim) {}

  static Quantity dimensionless(NumericValue val) {
    return Quantity(std::move(val), Dimension());
  }
  static Quantity zero(const Dimension& dim) { return Quantity(0, dim); }

  const NumericValue& val() const { return val_; }
  const Dimension& dim() const { return dim_; }

  /// "230 [M^1 L^1 T^-2]"
  std::string to_string() const;

 private:
  NumericValue val_;
  Dimension dim_;
};

// Checked arithmetic. Sums require equal dimensions (kDimensionMismatch).
Quantity q_add(const Quantity& a, const Quantity& b);
Quantity q_sub(const Quantity& a, const Quantity& b);
Quantity q_neg(const Quantity& a);
Quantity q_mul(const Quantity& a, const Quantity& b);
/// Throws kDivisionByZero when b is zero.
Quantity q_div(const Quantity& a, const Quantity& b);
/// Scalar action c • a: scales the value, keeps the dimension.
Quantity q_smul(const NumericValue& c, const Quantity& a);
/// a^e with the dimension scaled by e.
Quantity q_pow(const Quantity& a, const BigRational& e);
/// Relabels `a` with `target`; throws kInvalidCast unless the dimensions
/// agree. The value is never touched.
Quantity q_cast(const Quantity& a, const Dimension& target);
const NumericValue& q_val(const Quantity& a);
NumericValue q_norm(const Quantity& a);

/// val_inj: equal dimensions and equal values (within tolerance when
/// either value is approximate).
bool q_equal(const Quantity& a, const Quantity& b,
             const NumericConfig& config = {});

inline Quantity operator+(const Quantity& a, const Quantity& b) {
  return q_add(a, b);
}
inline Quantity operator-(const Quantity& a, const Quantity& b) {
  return q_sub(a, b);
}
inline Quantity operator-(const Quantity& a) { return q_neg(a); }
inline Quantity operator*(const Quantity& a, const Quantity& b) {
  return q_mul(a, b);
}
inline Quantity operator/(const Quantity& a, const Quantity& b) {
  return q_div(a, b);
}

}  // namespace physk

#endif  // PHYSK_QUANTITY_H_
