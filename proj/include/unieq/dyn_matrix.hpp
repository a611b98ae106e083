// Copyright 2026 The unieq Authors
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

#pragma once

#include <variant>

#include "unieq/matrix.hpp"

namespace unieq {

// A matrix whose scalar mode is only known at run time (instance files pick
// it per document). Operations on two DynMatrix values refuse to mix modes.
using DynMatrix = std::variant<FloatMatrix, ExactMatrix>;

inline Mode mode_of(const DynMatrix& m) { return std::holds_alternative<FloatMatrix>(m) ? Mode::Float : Mode::Exact; }

template <typename F>
auto visit_same_mode(const DynMatrix& a, const DynMatrix& b, F&& f) {
  if (a.index() != b.index()) {
    throw ModeError(std::string("mixed-mode operation: ") + mode_name(mode_of(a)) + " with " + mode_name(mode_of(b)));
  }
  return std::visit(
      [&](const auto& x) -> DynMatrix {
        using M = std::decay_t<decltype(x)>;
        return f(x, std::get<M>(b));
      },
      a);
}

inline DynMatrix mat_mul(const DynMatrix& a, const DynMatrix& b) {
  return visit_same_mode(a, b, [](const auto& x, const auto& y) { return mat_mul(x, y); });
}

inline DynMatrix add(const DynMatrix& a, const DynMatrix& b) {
  return visit_same_mode(a, b, [](const auto& x, const auto& y) { return x + y; });
}

}  // namespace unieq
