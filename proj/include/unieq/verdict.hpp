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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "unieq/matrix.hpp"
#include "unieq/words.hpp"

namespace unieq {

enum class Result { Equivalent, NotEquivalent };
enum class EngineKind { Brute, Closure, FastpathN2, FastpathN3 };
enum class Side { Left, Right };

inline const char* result_name(Result r) { return r == Result::Equivalent ? "Equivalent" : "NotEquivalent"; }

inline const char* engine_name(EngineKind e) {
  switch (e) {
    case EngineKind::Brute: return "brute";
    case EngineKind::Closure: return "closure";
    case EngineKind::FastpathN2: return "fastpath_n2";
    case EngineKind::FastpathN3: return "fastpath_n3";
  }
  return "unknown";
}

/// tr w(left letters) differs from tr w(right letters). Traces are reported
/// for the letters as handed to the engine; the comparison that failed was
/// made on scale·trace.
template <Scalar S>
struct TraceCertificate {
  Word word;
  S trace_left{};
  S trace_right{};
  double scale = 1.0;
};

/// A linear relation among word values that holds on one side and fails on
/// the other:
///   word_scale·w(L) ≈ Σ c_i·basis_scales[i]·basis[i](L)   (dependent side)
/// with the same coefficients failing on the opposite side.
template <Scalar S>
struct DependencyCertificate {
  Word word;
  std::vector<Word> basis;
  std::vector<S> coefficients;
  std::vector<double> basis_scales;
  double word_scale = 1.0;
  Side dependent_side = Side::Left;
  double residual_left = 0.0;
  double residual_right = 0.0;
};

template <Scalar S>
using Certificate = std::variant<TraceCertificate<S>, DependencyCertificate<S>>;

template <Scalar S>
struct Verdict {
  Result result = Result::Equivalent;
  EngineKind engine = EngineKind::Closure;
  std::optional<Certificate<S>> certificate;
  std::string route;
  double prescale = 1.0;
  std::optional<double> tolerance;
  double elapsed_ms = 0.0;
  std::size_t words_checked = 0;
  std::size_t basis_dimension = 0;

  bool equivalent() const { return result == Result::Equivalent; }
};

template <Scalar S>
Verdict<S> not_equivalent(EngineKind e, Certificate<S> cert) {
  Verdict<S> v;
  v.result = Result::NotEquivalent;
  v.engine = e;
  v.certificate = std::move(cert);
  return v;
}

namespace detail {

template <Scalar S>
Matrix<S> relation_residual(const Word& w, double word_scale, std::span<const Word> basis, std::span<const S> coeffs,
                            std::span<const double> scales, std::span<const Matrix<S>> letters) {
  Matrix<S> r = eval_word<S>(w, letters);
  if constexpr (!is_exact_v<S>) r *= S(word_scale, 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    S c = coeffs[i];
    if constexpr (!is_exact_v<S>) c *= S(scales[i], 0.0);
    r -= eval_word<S>(basis[i], letters) * c;
  }
  return r;
}

}  // namespace detail

/// Re-evaluates a certificate from scratch against the letters the engine
/// compared and confirms that it really witnesses non-equivalence.
template <Scalar S>
bool check_certificate(const Certificate<S>& cert, std::span<const Matrix<S>> left, std::span<const Matrix<S>> right,
                       double tol) {
  if (const auto* tc = std::get_if<TraceCertificate<S>>(&cert)) {
    S tl = trace(eval_word<S>(tc->word, left));
    S tr = trace(eval_word<S>(tc->word, right));
    if constexpr (is_exact_v<S>) {
      return tl == tc->trace_left && tr == tc->trace_right && !(tl == tr);
    } else {
      const S a = tl * tc->scale, b = tr * tc->scale;
      const bool reproduced = std::abs(tl - tc->trace_left) <= 1e-9 * (1.0 + std::abs(tl)) &&
                              std::abs(tr - tc->trace_right) <= 1e-9 * (1.0 + std::abs(tr));
      return reproduced && !scalars_agree(a, b, tol);
    }
  }
  const auto& dc = std::get<DependencyCertificate<S>>(cert);
  const Matrix<S> rl = detail::relation_residual<S>(dc.word, dc.word_scale, dc.basis, dc.coefficients,
                                                    dc.basis_scales, left);
  const Matrix<S> rr = detail::relation_residual<S>(dc.word, dc.word_scale, dc.basis, dc.coefficients,
                                                    dc.basis_scales, right);
  const Matrix<S>& dep = dc.dependent_side == Side::Left ? rl : rr;
  const Matrix<S>& other = dc.dependent_side == Side::Left ? rr : rl;
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return is_zero_matrix(dep) && !is_zero_matrix(other);
  } else {
    const auto& letters = dc.dependent_side == Side::Left ? right : left;
    Matrix<S> wv = eval_word<S>(dc.word, letters);
    const double mag = dc.word_scale * frobenius_norm(wv);
    return frobenius_norm(dep) <= tol * (1.0 + mag) && frobenius_norm(other) > tol * (1.0 + mag);
  }
}

template <Scalar S>
bool check_certificate(const Certificate<S>& cert, const std::vector<Matrix<S>>& left,
                       const std::vector<Matrix<S>>& right, double tol) {
  return check_certificate<S>(cert, std::span<const Matrix<S>>(left), std::span<const Matrix<S>>(right), tol);
}

}  // namespace unieq
