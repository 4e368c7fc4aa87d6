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

#ifndef PHYSK_REWRITE_H_
#define PHYSK_REWRITE_H_

#include <string>

#include "physk/ast.h"

namespace physk {

/// One capture-avoiding replacement.
struct Rewrite {
  enum class Kind {
    kVar,       // Var `name` := repl
    kPoint,     // every subterm equal to `point` := repl
    kFunction,  // Apply name(a) := repl[param := a]
  };
  Kind kind = Kind::kVar;
  std::string name;
  ExprPtr point;
  std::string param;
  ExprPtr repl;

  static Rewrite var(std::string name, ExprPtr repl);
  static Rewrite at_point(ExprPtr point, ExprPtr repl);
  static Rewrite function(std::string name, std::string param, ExprPtr body);
};

ExprPtr apply_rewrite(const ExprPtr& e, const Rewrite& rw);
/// Quantifier binders that would capture a free name of the replacement
/// are renamed first.
PropPtr apply_rewrite(const PropPtr& p, const Rewrite& rw);

bool mentions(const ExprPtr& e, const std::string& name);
bool mentions(const PropPtr& p, const std::string& name);

}  // namespace physk

#endif  // PHYSK_REWRITE_H_
