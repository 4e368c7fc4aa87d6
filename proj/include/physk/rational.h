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

#ifndef PHYSK_RATIONAL_H_
#define PHYSK_RATIONAL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace physk {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// A reduced fraction with 64-bit numerator and denominator.
///
/// Used for dimension exponents. Every operation checks that the reduced
/// result still fits and raises ErrorCode::kOverflow otherwise. The
/// denominator is always positive.
class SmallRational {
 public:
  constexpr SmallRational() = default;
  constexpr SmallRational(std::int64_t value)  // NOLINT: implicit from int
      : num_(value), den_(1) {}
  SmallRational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  SmallRational operator-() const;
  friend SmallRational operator+(SmallRational a, SmallRational b);
  friend SmallRational operator-(SmallRational a, SmallRational b);
  friend SmallRational operator*(SmallRational a, SmallRational b);
  friend SmallRational operator/(SmallRational a, SmallRational b);

  friend bool operator==(SmallRational a, SmallRational b) = default;
  friend std::strong_ordering operator<=>(SmallRational a, SmallRational b);

  BigRational to_big() const { return BigRational(num_, den_); }
  static SmallRational from_big(const BigRational& value);

  /// "3", "-2", "1/2", "-3/4".
  std::string to_string() const;
  /// Inverse of to_string(); nullopt on malformed input.
  static std::optional<SmallRational> parse(std::string_view text);

 private:
  static SmallRational reduce(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// "p/q", or "p" for integers.
std::string to_string(const BigRational& value);

/// Parses an unsigned decimal literal ("12", "0.46", "4e6", "1.01e-5")
/// into the exact rational it denotes.
std::optional<BigRational> parse_decimal(std::string_view text);

/// Parses "p/q", "p", or a decimal literal, with an optional leading sign.
std::optional<BigRational> parse_rational(std::string_view text);

/// Finite decimal expansion of `value` if its denominator is 2^a 5^b.
std::optional<std::string> to_decimal_string(const BigRational& value);

/// Percentage of passes/total rounded half-up to `digits` decimals, without
/// the percent sign ("14.50"). total == 0 renders as zero.
std::string format_percent(const BigInt& passes, const BigInt& total,
                           int digits = 2);

/// Decimal rendering of an exact rational rounded half-up to `digits` places.
std::string format_fixed(const BigRational& value, int digits);

}  // namespace physk

#endif  // PHYSK_RATIONAL_H_
