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

#include <cstdint>
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "physk/error.h"

namespace physk {
namespace {

// Independent SI table: exponents of (T, L, M, I) written out by hand.
Dimension si(int t, int l, int m, int i = 0) {
  return Dimension(Dimension::Exponents{SmallRational(t), SmallRational(l),
                                        SmallRational(m), SmallRational(i),
                                        SmallRational(0), SmallRational(0),
                                        SmallRational(0)});
}

const Dimension kTime = si(1, 0, 0);
const Dimension kLength = si(0, 1, 0);
const Dimension kMass = si(0, 0, 1);
const Dimension kCharge = si(1, 0, 0, 1);
const Dimension kVoltage = si(-3, 2, 1, -1);
const Dimension kNewton = si(-2, 1, 1);
const Dimension kJoule = si(-2, 2, 1);

Dimension random_dimension(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  Dimension::Exponents e;
  for (auto& x : e) x = SmallRational(num(rng), den(rng));
  return Dimension(e);
}

SmallRational random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  return SmallRational(num(rng), den(rng));
}

TEST(BaseDimTest, SevenMembersInFixedOrder) {
  EXPECT_EQ(kNumBaseDims, 7u);
  EXPECT_EQ(static_cast<int>(BaseDim::kTime), 0);
  EXPECT_EQ(static_cast<int>(BaseDim::kLength), 1);
  EXPECT_EQ(static_cast<int>(BaseDim::kMass), 2);
  EXPECT_EQ(static_cast<int>(BaseDim::kCurrent), 3);
  EXPECT_EQ(static_cast<int>(BaseDim::kTemperature), 4);
  EXPECT_EQ(static_cast<int>(BaseDim::kAmount), 5);
  EXPECT_EQ(static_cast<int>(BaseDim::kLuminousIntensity), 6);
}

TEST(DimCombineTest, InverseCancels) {
  EXPECT_TRUE(dim_combine(kCharge, dim_invert(kCharge)).is_dimensionless());
}

TEST(DimCombineTest, Acceleration) {
  Dimension accel = dim_combine(kLength, dim_scale(kTime, -2));
  EXPECT_EQ(accel, si(-2, 1, 0));
}

TEST(DimCombineTest, ChargeOverVoltageIsFarad) {
  Dimension farad = dim_divide(kCharge, kVoltage);
  EXPECT_EQ(farad, si(4, -2, -1, 2));
  EXPECT_EQ(farad.to_string(), "M^-1 L^-2 T^4 I^2");
}

TEST(DimInvertTest, Examples) {
  EXPECT_EQ(dim_invert(Dimension()), Dimension());
  EXPECT_EQ(dim_invert(kLength), si(0, -1, 0));
  EXPECT_EQ(dim_invert(kVoltage), si(3, -2, -1, 1));
}

TEST(DimScaleTest, Examples) {
  Dimension speed_sq = si(-2, 2, 0);
  EXPECT_EQ(dim_scale(speed_sq, SmallRational(1, 2)), si(-1, 1, 0));
  EXPECT_TRUE(dim_scale(kVoltage, SmallRational(0)).is_dimensionless());
  EXPECT_EQ(dim_scale(kLength, 3), si(0, 3, 0));
}

TEST(DimScaleTest, OverflowIsReported) {
  Dimension big = Dimension::base(
      BaseDim::kLength, SmallRational(std::numeric_limits<std::int64_t>::max()));
  try {
    dim_scale(big, 2);
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
  EXPECT_THROW(dim_combine(big, big), Error);
}

TEST(DimEqTest, Examples) {
  EXPECT_TRUE(dim_eq(kNewton, dim_combine(kMass, si(-2, 1, 0))));
  EXPECT_FALSE(dim_eq(kJoule, kNewton));
  EXPECT_TRUE(dim_eq(kVoltage, kVoltage));
}

TEST(DimensionTextTest, RendersAndParses) {
  EXPECT_EQ(Dimension().to_string(), "1");
  EXPECT_EQ(dim_scale(kLength, SmallRational(1, 2)).to_string(), "L^1/2");
  for (const Dimension& d : {Dimension(), kCharge, kVoltage, kNewton,
                             dim_scale(kJoule, SmallRational(-3, 7))}) {
    auto parsed = Dimension::parse(d.to_string());
    ASSERT_TRUE(parsed.has_value()) << d.to_string();
    EXPECT_EQ(*parsed, d);
  }
  EXPECT_FALSE(Dimension::parse("Q^2").has_value());
}

TEST(DimensionPropertyTest, GroupLaws) {
  std::mt19937_64 rng(20260101);
  for (int i = 0; i < 1000; ++i) {
    Dimension a = random_dimension(rng);
    Dimension b = random_dimension(rng);
    Dimension c = random_dimension(rng);
    ASSERT_EQ(dim_combine(dim_combine(a, b), c),
              dim_combine(a, dim_combine(b, c)));
    ASSERT_EQ(dim_combine(a, b), dim_combine(b, a));
    ASSERT_EQ(dim_combine(a, Dimension()), a);
    ASSERT_TRUE(dim_combine(a, dim_invert(a)).is_dimensionless());
  }
}

TEST(DimensionPropertyTest, ScaleLaws) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Dimension a = random_dimension(rng);
    SmallRational p = random_scalar(rng);
    SmallRational q = random_scalar(rng);
    ASSERT_EQ(dim_scale(a, p * q), dim_scale(dim_scale(a, p), q));
    ASSERT_EQ(dim_scale(a, 1), a);
  }
}

TEST(DimensionPropertyTest, EqualityIsAnEquivalenceOnReducedExponents) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Dimension a = random_dimension(rng);
    Dimension b = random_dimension(rng);
    // Unreduced construction must land on the same element.
    Dimension::Exponents doubled;
    for (std::size_t k = 0; k < kNumBaseDims; ++k) {
      const SmallRational& e = a.exponents()[k];
      doubled[k] = SmallRational(e.num() * 2, e.den() * 2);
      ASSERT_GT(doubled[k].den(), 0);
    }
    Dimension a2(doubled);
    ASSERT_TRUE(dim_eq(a, a));
    ASSERT_TRUE(dim_eq(a, a2) && dim_eq(a2, a));
    ASSERT_EQ(dim_eq(a, b), dim_eq(b, a));
    ASSERT_EQ(dim_eq(a, b), a.to_string() == b.to_string());
  }
}

}  // namespace
}  // namespace physk
