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

#include <chrono>
#include <string>
#include <vector>

#include "unieq/closure.hpp"
#include "unieq/verdict.hpp"
#include "unieq/words.hpp"

namespace unieq {

// 2×2: tr A, tr A², tr AA*.
inline const std::vector<Word>& fastpath_words_n2() {
  static const std::vector<Word> words{Word::parse("s", 2), Word::parse("s^2", 2), Word::parse("s t", 2)};
  return words;
}

// 3×3: the classical seven-word list (Pearcy / Sibirskii)
// tr A, A², A³, AA*, A²A*, A²A*², A²A*²AA*.
inline const std::vector<Word>& fastpath_words_n3() {
  static const std::vector<Word> words{Word::parse("s", 2),       Word::parse("s^2", 2),
                                       Word::parse("s^3", 2),     Word::parse("s t", 2),
                                       Word::parse("s^2 t", 2),   Word::parse("s^2 t^2", 2),
                                       Word::parse("s^2 t^2 s t", 2)};
  return words;
}

/// Unitary similarity of 2×2 or 3×3 matrices from a fixed finite word list.
template <Scalar S>
Verdict<S> fastpath_similar(const Matrix<S>& X, const Matrix<S>& Y, double tol = 1e-8) {
  const auto t0 = std::chrono::steady_clock::now();
  require_same_size(X, Y, "fastpath_similar");
  const std::size_t m = X.rows();
  if (m != 2 && m != 3) throw DimensionError("fast paths exist only for 2x2 and 3x3 matrices");
  const EngineKind engine = m == 2 ? EngineKind::FastpathN2 : EngineKind::FastpathN3;
  const auto& words = m == 2 ? fastpath_words_n2() : fastpath_words_n3();
  const LetterSet<S> letters = star_letters(X, Y);
  Verdict<S> v;
  v.engine = engine;
  for (const auto& w : words) {
    ++v.words_checked;
    S tl = trace(eval_word<S>(w, letters.left));
    S tr = trace(eval_word<S>(w, letters.right));
    if (!scalars_agree(tl, tr, tol)) {
      const std::size_t checked = v.words_checked;
      v = not_equivalent<S>(engine, TraceCertificate<S>{w, std::move(tl), std::move(tr), 1.0});
      v.words_checked = checked;
      break;
    }
  }
  if constexpr (!is_exact_v<S>) v.tolerance = tol;
  v.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

}  // namespace unieq
