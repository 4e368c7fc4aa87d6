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

#include "physk/quantity.h"

#include "physk/error.h"

namespace physk {
namespace {

void require_same_dim(const Quantity& a, const Quantity& b,
                      const char* op) {
  if (!dim_eq(a.dim(), b.dim())) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(op) + ": expected " + a.dim().to_string() +
                    ", found " + b.dim().to_string());
  }
}

}  // namespace

std::string Quantity::to_string() const {
  return val_.to_string() + " [" + dim_.to_string() + "]";
}

Quantity q_add(const Quantity& a, const Quantity& b) {
  require_same_dim(a, b, "addition");
  return Quantity(a.val() + b.val(), a.dim());
}

Quantity q_sub(const Quantity& a, const Quantity& b) {
  require_same_dim(a, b, "subtraction");
  return Quantity(a.val() - b.val(), a.dim());
}

Quantity q_neg(const Quantity& a) { return Quantity(-a.val(), a.dim()); }

Quantity q_mul(const Quantity& a, const Quantity& b) {
  return Quantity(a.val() * b.val(), dim_combine(a.dim(), b.dim()));
}

Quantity q_div(const Quantity& a, const Quantity& b) {
  Dimension dim = dim_divide(a.dim(), b.dim());
  return Quantity(a.val() / b.val(), dim);
}

Quantity q_smul(const NumericValue& c, const Quantity& a) {
  return Quantity(c * a.val(), a.dim());
}

Quantity q_pow(const Quantity& a, const BigRational& e) {
  // Scale the dimension first so overflow is reported before any work.
  Dimension dim = dim_scale(a.dim(), SmallRational::from_big(e));
  return Quantity(a.val().pow_rational(e), dim);
}

Quantity q_cast(const Quantity& a, const Dimension& target) {
  if (!dim_eq(a.dim(), target)) {
    throw Error(ErrorCode::kInvalidCast, "cannot cast " + a.dim().to_string() +
                                             " to " + target.to_string());
  }
  return Quantity(a.val(), target);
}

const NumericValue& q_val(const Quantity& a) { return a.val(); }

NumericValue q_norm(const Quantity& a) { return a.val().abs(); }

bool q_equal(const Quantity& a, const Quantity& b,
             const NumericConfig& config) {
  return dim_eq(a.dim(), b.dim()) && numeric_equal(a.val(), b.val(), config);
}

}  // namespace physk
