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

#ifndef PHYSK_SOUNDNESS_H_
#define PHYSK_SOUNDNESS_H_

#include <cstdint>
#include <string>

#include "physk/ast.h"
#include "physk/unitdb.h"

namespace physk {

struct FuzzConfig {
  std::uint64_t seed = 1;
  std::size_t wanted = 100;  // non-vacuous instantiations to collect
  std::size_t max_attempts = 4000;
};

struct FuzzReport {
  std::size_t attempts = 0;
  std::size_t non_vacuous = 0;  // every hypothesis held
  std::size_t falsified = 0;    // ...and the goal did not
  std::string first_failure;    // bindings of the first falsifying instance
};

/// Random instantiation of a statement's free variables.
///
/// Free variables get positive rational values; definitions are then
/// evaluated. Equations that still fail are repaired by solving for a free
/// variable they depend on affinely. Function equalities are expanded into
/// coefficient equations for repair and spot-checked at random points.
/// Finite quantifiers in the goal cycle through their values, and the
/// goal's antecedents are repaired like hypotheses.
FuzzReport soundness_fuzz(const Statement& s, const FuzzConfig& config = {},
                          const ConstantTable& constants =
                              UnitDb::standard().constants(),
                          const UnitDb& db = UnitDb::standard());

}  // namespace physk

#endif  // PHYSK_SOUNDNESS_H_
