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

#include <cmath>
#include <complex>
#include <concepts>
#include <string>

#include "unieq/gaussian_rational.hpp"

namespace unieq {

using Complex = std::complex<double>;

enum class Mode { Float, Exact };

inline const char* mode_name(Mode m) { return m == Mode::Float ? "float" : "exact"; }

template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr Mode mode = Mode::Float;

  static Complex conj(const Complex& z) { return std::conj(z); }
  static double abs(const Complex& z) { return std::abs(z); }
  // |z|^2 as a scalar of the same field.
  static Complex norm2(const Complex& z) { return std::norm(z); }
  static double real_part(const Complex& z) { return z.real(); }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  static Complex from_int(long v) { return Complex(static_cast<double>(v), 0.0); }
  static Complex from_real(double v) { return Complex(v, 0.0); }
  static Complex to_complex(const Complex& z) { return z; }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::Exact;

  static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
  static double abs(const GaussianRational& z) { return std::sqrt(z.norm2().get_d()); }
  static GaussianRational norm2(const GaussianRational& z) { return GaussianRational(z.norm2()); }
  static double real_part(const GaussianRational& z) { return z.re().get_d(); }
  static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
  static GaussianRational from_int(long v) { return GaussianRational(v); }
  static Complex to_complex(const GaussianRational& z) { return z.to_complex(); }
};

template <typename S>
concept Scalar = requires { ScalarTraits<S>::exact; };

template <Scalar S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

/// Scalar equality under the engine tolerance policy: exact equality in
/// exact mode, |a - b| <= tol * (1 + |a|) in float mode.
template <Scalar S>
bool scalars_agree(const S& a, const S& b, double tol) {
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return std::abs(a - b) <= tol * (1.0 + std::abs(a));
  }
}

}  // namespace unieq
