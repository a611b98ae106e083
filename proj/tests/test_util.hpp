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

#include <cstdint>
#include <random>

#include "unieq/unieq.hpp"

namespace unieq::testing {

inline FloatMatrix random_float(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_gaussian(n, n, rng);
}

inline FloatMatrix random_float(std::size_t n, Rng& rng) { return random_gaussian(n, n, rng); }

// Exact copy of a float matrix (doubles are dyadic rationals).
inline ExactMatrix rationalize(const FloatMatrix& m) {
  ExactMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.flat()[i] = GaussianRational(mpq_class(m.flat()[i].real()), mpq_class(m.flat()[i].imag()));
  }
  return out;
}

inline ExactMatrix random_exact(std::size_t n, Rng& rng) { return random_small_rational(n, rng); }

inline FloatMatrix similar_copy(const FloatMatrix& B, const FloatMatrix& U) {
  return apply_relation(Relation::SimilarU, U, B);
}

}  // namespace unieq::testing
