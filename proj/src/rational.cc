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

#include "physk/rational.h"

#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include "physk/error.h"

namespace physk {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kNegativeBaseRationalExponent:
      return "NegativeBaseRationalExponent";
    case ErrorCode::kInvalidCast: return "InvalidCast";
    case ErrorCode::kUnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnboundVariable: return "UnboundVariable";
    case ErrorCode::kUnsupportedNode: return "UnsupportedNode";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kNotPolynomial: return "NotPolynomial";
    case ErrorCode::kCyclicDefinitions: return "CyclicDefinitions";
    case ErrorCode::kMalformedScript: return "MalformedScript";
    case ErrorCode::kValidation: return "Validation";
    case ErrorCode::kExternalProverCrash: return "ExternalProverCrash";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

SmallRational::SmallRational(std::int64_t num, std::int64_t den) {
  *this = reduce(num, den);
}

SmallRational SmallRational::reduce(__int128 num, __int128 den) {
  if (den == 0) {
    throw Error(ErrorCode::kDivisionByZero, "rational with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  // Symmetric range: |num| and den both fit in a signed 64-bit magnitude.
  if (num > kMax || num < -kMax || den > kMax) {
    throw Error(ErrorCode::kOverflow, "dimension exponent overflows 64 bits");
  }
  SmallRational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

SmallRational SmallRational::operator-() const {
  return reduce(-static_cast<__int128>(num_), den_);
}

SmallRational operator+(SmallRational a, SmallRational b) {
  return SmallRational::reduce(
      static_cast<__int128>(a.num_) * b.den_ +
          static_cast<__int128>(b.num_) * a.den_,
      static_cast<__int128>(a.den_) * b.den_);
}

SmallRational operator-(SmallRational a, SmallRational b) { return a + (-b); }

SmallRational operator*(SmallRational a, SmallRational b) {
  return SmallRational::reduce(static_cast<__int128>(a.num_) * b.num_,
                               static_cast<__int128>(a.den_) * b.den_);
}

SmallRational operator/(SmallRational a, SmallRational b) {
  if (b.num_ == 0) {
    throw Error(ErrorCode::kDivisionByZero, "division of exponent by zero");
  }
  return SmallRational::reduce(static_cast<__int128>(a.num_) * b.den_,
                               static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(SmallRational a, SmallRational b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

SmallRational SmallRational::from_big(const BigRational& value) {
  BigInt n = boost::multiprecision::numerator(value);
  BigInt d = boost::multiprecision::denominator(value);
  if (n > kMax || n < -kMax || d > kMax) {
    throw Error(ErrorCode::kOverflow, "exponent " + physk::to_string(value) +
                                          " does not fit in 64 bits");
  }
  return SmallRational(static_cast<std::int64_t>(n),
                       static_cast<std::int64_t>(d));
}

std::string SmallRational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<SmallRational> SmallRational::parse(std::string_view text) {
  auto big = parse_rational(text);
  if (!big) return std::nullopt;
  try {
    return from_big(*big);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string to_string(const BigRational& value) {
  BigInt n = boost::multiprecision::numerator(value);
  BigInt d = boost::multiprecision::denominator(value);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

std::optional<BigRational> parse_decimal(std::string_view text) {
  std::size_t i = 0;
  std::string digits;
  std::int64_t scale = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits.push_back(text[i++]);
  }
  if (digits.empty()) return std::nullopt;
  if (i < text.size() && text[i] == '.') {
    ++i;
    std::size_t start = i;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits.push_back(text[i++]);
    }
    if (i == start) return std::nullopt;
    scale -= static_cast<std::int64_t>(i - start);
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      negative = text[i] == '-';
      ++i;
    }
    std::size_t start = i;
    std::int64_t exponent = 0;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      exponent = exponent * 10 + (text[i++] - '0');
      if (exponent > 100000) return std::nullopt;
    }
    if (i == start) return std::nullopt;
    scale += negative ? -exponent : exponent;
  }
  if (i != text.size()) return std::nullopt;
  // Leading zeros would select octal in the BigInt string constructor.
  std::size_t nonzero = digits.find_first_not_of('0');
  digits = nonzero == std::string::npos ? "0" : digits.substr(nonzero);
  BigRational value{BigInt(digits)};
  BigInt ten_pow = boost::multiprecision::pow(BigInt(10),
                                              static_cast<unsigned>(
                                                  scale < 0 ? -scale : scale));
  if (scale < 0) {
    value /= ten_pow;
  } else {
    value *= ten_pow;
  }
  return value;
}

std::optional<BigRational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::optional<BigRational> value;
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    value = parse_decimal(text);
  } else {
    auto num = parse_decimal(text.substr(0, slash));
    auto den = parse_decimal(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    value = *num / *den;
  }
  if (value && negative) *value = -*value;
  return value;
}

std::optional<std::string> to_decimal_string(const BigRational& value) {
  BigInt n = boost::multiprecision::numerator(value);
  BigInt d = boost::multiprecision::denominator(value);
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::nullopt;
  int places = std::max(twos, fives);
  bool negative = n < 0;
  if (negative) n = -n;
  BigInt scaled = n * boost::multiprecision::pow(BigInt(10), places) /
                  boost::multiprecision::denominator(value);
  std::string digits = scaled.str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, places - digits.size() + 1, '0');
    }
    digits.insert(digits.size() - places, ".");
  }
  return negative ? "-" + digits : digits;
}

std::string format_fixed(const BigRational& value, int digits) {
  bool negative = value < 0;
  BigRational magnitude = negative ? BigRational(-value) : value;
  BigInt scale = boost::multiprecision::pow(BigInt(10), digits);
  BigRational scaled = magnitude * scale;
  BigInt n = boost::multiprecision::numerator(scaled);
  BigInt d = boost::multiprecision::denominator(scaled);
  // Round half up on the magnitude.
  BigInt rounded = (2 * n + d) / (2 * d);
  std::string text = rounded.str();
  if (digits > 0) {
    if (static_cast<int>(text.size()) <= digits) {
      text.insert(0, digits - text.size() + 1, '0');
    }
    text.insert(text.size() - digits, ".");
  }
  if (negative && rounded != 0) text.insert(0, "-");
  return text;
}

std::string format_percent(const BigInt& passes, const BigInt& total,
                           int digits) {
  if (total == 0) return format_fixed(BigRational(0), digits);
  return format_fixed(BigRational(passes * 100, total), digits);
}

}  // namespace physk
