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

#ifndef PHYSK_NUMERIC_H_
#define PHYSK_NUMERIC_H_

#include <string>
#include <variant>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "physk/rational.h"

namespace physk {

/// Working-precision real used once a computation leaves the rationals.
using ApproxReal = boost::multiprecision::cpp_bin_float_50;

inline constexpr int kWorkingDigits = 50;

/// Settings for comparisons that involve approximate values.
struct NumericConfig {
  /// Two values a, b are equal when |a - b| <= tolerance * max(|a|, |b|).
  ApproxReal relative_tolerance{"1e-30"};
};

/// Result of comparing two numeric values.
struct Comparison {
  int sign = 0;  // -1, 0, +1
  bool approx = false;  // decided with a tolerance
};

enum class ElementaryFn { kSin, kCos, kLog, kExp, kSqrt };

/// A real number that is exact for as long as possible.
///
/// Arithmetic on two Exact operands stays exact. Only operations whose
/// result is not rational (irrational roots, transcendental functions, π)
/// produce Approx values, and Approx is contagious from then on.
class NumericValue {
 public:
  NumericValue() : value_(BigRational(0)) {}
  NumericValue(BigRational value)  // NOLINT: implicit
      : value_(std::move(value)) {}
  NumericValue(int value) : value_(BigRational(value)) {}  // NOLINT
  static NumericValue approx(ApproxReal value) {
    NumericValue v;
    v.value_ = std::move(value);
    return v;
  }
  static NumericValue pi();

  bool is_exact() const {
    return std::holds_alternative<BigRational>(value_);
  }
  const BigRational& exact() const { return std::get<BigRational>(value_); }
  ApproxReal to_approx() const;

  bool is_zero() const;
  int sign() const;

  NumericValue operator-() const;
  friend NumericValue operator+(const NumericValue& a, const NumericValue& b);
  friend NumericValue operator-(const NumericValue& a, const NumericValue& b);
  friend NumericValue operator*(const NumericValue& a, const NumericValue& b);
  /// Throws kDivisionByZero for a zero divisor, whatever its tier.
  friend NumericValue operator/(const NumericValue& a, const NumericValue& b);

  NumericValue abs() const;
  NumericValue pow_int(long long exponent) const;
  /// this^exponent. Exact when the base is exact and the root is perfect.
  /// Throws kNegativeBaseRationalExponent for a negative base and a
  /// non-integer exponent.
  NumericValue pow_rational(const BigRational& exponent) const;
  /// this^exponent for an arbitrary real exponent.
  NumericValue pow_real(const NumericValue& exponent) const;
  NumericValue apply(ElementaryFn fn) const;

  /// Bitwise identity: same tier and same stored value.
  bool identical(const NumericValue& other) const {
    return value_ == other.value_;
  }

  /// Exact values print as "p/q"; approximate values in scientific
  /// notation at working precision with a leading "~".
  std::string to_string() const;

 private:
  std::variant<BigRational, ApproxReal> value_;
};

Comparison compare(const NumericValue& a, const NumericValue& b,
                   const NumericConfig& config = {});
bool numeric_equal(const NumericValue& a, const NumericValue& b,
                   const NumericConfig& config = {});

/// Largest r with r^n <= value for value >= 0.
BigInt integer_root(const BigInt& value, unsigned n);

}  // namespace physk

#endif  // PHYSK_NUMERIC_H_
