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

#include "physk/numeric.h"

#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "physk/error.h"

namespace physk {
namespace {

namespace mp = boost::multiprecision;

// Exponents beyond this are rejected rather than expanded exactly.
constexpr long long kMaxExactExponent = 100000;

ApproxReal to_real(const BigRational& value) {
  ApproxReal n(mp::numerator(value));
  ApproxReal d(mp::denominator(value));
  return n / d;
}

BigRational pow_exact(const BigRational& base, unsigned long long exponent) {
  BigInt n = mp::pow(BigInt(mp::numerator(base)),
                     static_cast<unsigned>(exponent));
  BigInt d = mp::pow(BigInt(mp::denominator(base)),
                     static_cast<unsigned>(exponent));
  return BigRational(n, d);
}

}  // namespace

BigInt integer_root(const BigInt& value, unsigned n) {
  if (value < 0) {
    throw Error(ErrorCode::kDomainError, "integer root of a negative value");
  }
  if (value < 2 || n == 1) return value;
  // Newton iteration from an upper bound 2^ceil(bits/n).
  unsigned bits = static_cast<unsigned>(mp::msb(value)) + 1;
  BigInt x = BigInt(1) << ((bits + n - 1) / n);
  while (true) {
    BigInt y = ((n - 1) * x + value / mp::pow(x, n - 1)) / n;
    if (y >= x) break;
    x = y;
  }
  while (mp::pow(x, n) > value) --x;
  while (mp::pow(BigInt(x + 1), n) <= value) ++x;
  return x;
}

NumericValue NumericValue::pi() {
  return approx(boost::math::constants::pi<ApproxReal>());
}

ApproxReal NumericValue::to_approx() const {
  if (is_exact()) return to_real(exact());
  return std::get<ApproxReal>(value_);
}

bool NumericValue::is_zero() const { return sign() == 0; }

int NumericValue::sign() const {
  if (is_exact()) return exact().sign();
  return std::get<ApproxReal>(value_).sign();
}

NumericValue NumericValue::operator-() const {
  if (is_exact()) return NumericValue(BigRational(-exact()));
  return approx(-std::get<ApproxReal>(value_));
}

NumericValue operator+(const NumericValue& a, const NumericValue& b) {
  if (a.is_exact() && b.is_exact()) {
    return NumericValue(BigRational(a.exact() + b.exact()));
  }
  return NumericValue::approx(a.to_approx() + b.to_approx());
}

NumericValue operator-(const NumericValue& a, const NumericValue& b) {
  return a + (-b);
}

NumericValue operator*(const NumericValue& a, const NumericValue& b) {
  if (a.is_exact() && b.is_exact()) {
    return NumericValue(BigRational(a.exact() * b.exact()));
  }
  return NumericValue::approx(a.to_approx() * b.to_approx());
}

NumericValue operator/(const NumericValue& a, const NumericValue& b) {
  if (b.is_zero()) {
    throw Error(ErrorCode::kDivisionByZero, "division by zero");
  }
  if (a.is_exact() && b.is_exact()) {
    return NumericValue(BigRational(a.exact() / b.exact()));
  }
  return NumericValue::approx(a.to_approx() / b.to_approx());
}

NumericValue NumericValue::abs() const { return sign() < 0 ? -*this : *this; }

NumericValue NumericValue::pow_int(long long exponent) const {
  if (exponent > kMaxExactExponent || exponent < -kMaxExactExponent) {
    throw Error(ErrorCode::kOverflow,
                "exponent " + std::to_string(exponent) + " is too large");
  }
  if (exponent < 0 && is_zero()) {
    throw Error(ErrorCode::kDivisionByZero, "zero raised to a negative power");
  }
  unsigned long long magnitude =
      static_cast<unsigned long long>(exponent < 0 ? -exponent : exponent);
  if (is_exact()) {
    BigRational p = pow_exact(exact(), magnitude);
    if (exponent < 0) p = 1 / p;
    return NumericValue(p);
  }
  ApproxReal p = mp::pow(std::get<ApproxReal>(value_),
                         static_cast<long long>(magnitude));
  if (exponent < 0) p = 1 / p;
  return approx(p);
}

NumericValue NumericValue::pow_rational(const BigRational& exponent) const {
  BigInt num = mp::numerator(exponent);
  BigInt den = mp::denominator(exponent);
  if (den == 1) {
    if (num > kMaxExactExponent || num < -kMaxExactExponent) {
      throw Error(ErrorCode::kOverflow, "exponent is too large");
    }
    return pow_int(static_cast<long long>(num));
  }
  if (sign() < 0) {
    throw Error(ErrorCode::kNegativeBaseRationalExponent,
                "negative base " + to_string() + " raised to " +
                    physk::to_string(exponent));
  }
  if (is_zero()) {
    if (num > 0) return NumericValue(0);
    throw Error(ErrorCode::kDivisionByZero, "zero raised to a negative power");
  }
  if (is_exact() && den <= 64 && num <= kMaxExactExponent &&
      num >= -kMaxExactExponent) {
    NumericValue powered = pow_int(static_cast<long long>(num));
    const BigRational& p = powered.exact();
    unsigned root = static_cast<unsigned>(den);
    BigInt n = mp::numerator(p);
    BigInt d = mp::denominator(p);
    BigInt rn = integer_root(n, root);
    BigInt rd = integer_root(d, root);
    if (mp::pow(rn, root) == n && mp::pow(rd, root) == d) {
      return NumericValue(BigRational(rn, rd));
    }
  }
  ApproxReal e = to_real(exponent);
  return approx(mp::pow(to_approx(), e));
}

NumericValue NumericValue::pow_real(const NumericValue& exponent) const {
  if (exponent.is_exact()) return pow_rational(exponent.exact());
  if (sign() < 0) {
    throw Error(ErrorCode::kNegativeBaseRationalExponent,
                "negative base " + to_string() + " raised to a real power");
  }
  if (is_zero()) {
    if (exponent.sign() > 0) return NumericValue(0);
    throw Error(ErrorCode::kDivisionByZero, "zero raised to a negative power");
  }
  return approx(mp::pow(to_approx(), exponent.to_approx()));
}

NumericValue NumericValue::apply(ElementaryFn fn) const {
  switch (fn) {
    case ElementaryFn::kSin:
      if (is_exact() && is_zero()) return NumericValue(0);
      return approx(mp::sin(to_approx()));
    case ElementaryFn::kCos:
      if (is_exact() && is_zero()) return NumericValue(1);
      return approx(mp::cos(to_approx()));
    case ElementaryFn::kExp:
      if (is_exact() && is_zero()) return NumericValue(1);
      return approx(mp::exp(to_approx()));
    case ElementaryFn::kLog:
      if (sign() <= 0) {
        throw Error(ErrorCode::kDomainError,
                    "log of non-positive value " + to_string());
      }
      if (is_exact() && exact() == 1) return NumericValue(0);
      return approx(mp::log(to_approx()));
    case ElementaryFn::kSqrt:
      if (sign() < 0) {
        throw Error(ErrorCode::kNegativeBaseRationalExponent,
                    "sqrt of negative value " + to_string());
      }
      return pow_rational(BigRational(1, 2));
  }
  return *this;
}

std::string NumericValue::to_string() const {
  if (is_exact()) return physk::to_string(exact());
  std::ostringstream out;
  out << "~" << std::get<ApproxReal>(value_).str(kWorkingDigits,
                                                 std::ios::scientific);
  return out.str();
}

Comparison compare(const NumericValue& a, const NumericValue& b,
                   const NumericConfig& config) {
  if (a.is_exact() && b.is_exact()) {
    int s = a.exact() < b.exact() ? -1 : (a.exact() > b.exact() ? 1 : 0);
    return {s, false};
  }
  ApproxReal x = a.to_approx();
  ApproxReal y = b.to_approx();
  ApproxReal diff = x - y;
  ApproxReal ax = mp::abs(x);
  ApproxReal ay = mp::abs(y);
  ApproxReal scale = ax < ay ? ay : ax;
  if (mp::abs(diff) <= config.relative_tolerance * scale) return {0, true};
  return {diff.sign() < 0 ? -1 : 1, true};
}

bool numeric_equal(const NumericValue& a, const NumericValue& b,
                   const NumericConfig& config) {
  return compare(a, b, config).sign == 0;
}

}  // namespace physk
