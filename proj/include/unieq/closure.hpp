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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "unieq/gadgets.hpp"
#include "unieq/modular.hpp"
#include "unieq/span_basis.hpp"
#include "unieq/verdict.hpp"
#include "unieq/words.hpp"

namespace unieq {

/// Left and right letter lists compared letter-for-letter. For k pairs
/// (X_j, Y_j) the letters are X_0, X_0*, X_1, X_1*, ... on the left.
template <Scalar S>
struct LetterSet {
  std::vector<Matrix<S>> left;
  std::vector<Matrix<S>> right;

  std::uint32_t alphabet_size() const { return static_cast<std::uint32_t>(left.size()); }
};

template <Scalar S>
LetterSet<S> star_letters(std::span<const MatrixPair<S>> pairs) {
  LetterSet<S> ls;
  for (const auto& p : pairs) {
    ls.left.push_back(p.A);
    ls.left.push_back(adjoint(p.A));
    ls.right.push_back(p.B);
    ls.right.push_back(adjoint(p.B));
  }
  return ls;
}

template <Scalar S>
LetterSet<S> star_letters(const Matrix<S>& X, const Matrix<S>& Y) {
  return LetterSet<S>{{X, adjoint(X)}, {Y, adjoint(Y)}};
}

namespace detail {

template <Scalar S>
void require_letter_set(const LetterSet<S>& ls, const char* what) {
  if (ls.left.empty() || ls.left.size() != ls.right.size()) {
    throw DimensionError(std::string(what) + ": left and right letter counts differ or are zero");
  }
  const std::size_t m = ls.left[0].rows();
  for (std::size_t i = 0; i < ls.left.size(); ++i) {
    require_square(ls.left[i], what);
    require_square(ls.right[i], what);
    if (ls.left[i].rows() != m || ls.right[i].rows() != m) throw DimensionError(std::string(what) + ": size mismatch");
  }
}

// ‖target - Σ c_i basis_i‖_F
template <Scalar S>
double combination_residual(const Matrix<S>& target, const std::vector<Matrix<S>>& basis, const std::vector<S>& c) {
  std::vector<S> r(target.flat().begin(), target.flat().end());
  for (std::size_t i = 0; i < basis.size(); ++i) detail::axpy_sub<S>(r, c[i], basis[i].flat());
  return detail::vec_norm<S>(r);
}

template <Scalar S>
struct ClosureState {
  const LetterSet<S>& letters;
  std::chrono::steady_clock::time_point t0;
  double tol;
  std::vector<Word> words;
  std::vector<Matrix<S>> P, Q;
  std::vector<double> scales;
  std::size_t candidates = 0;

  Verdict<S> finish(Verdict<S> v) const {
    v.engine = EngineKind::Closure;
    v.basis_dimension = words.size();
    v.words_checked = candidates;
    if constexpr (!is_exact_v<S>) v.tolerance = tol;
    v.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return v;
  }

  Verdict<S> trace_failure(const Word& w, double word_scale) const {
    TraceCertificate<S> tc{w, trace(eval_word<S>(w, letters.left)), trace(eval_word<S>(w, letters.right)),
                           word_scale};
    return finish(not_equivalent<S>(EngineKind::Closure, tc));
  }

  Verdict<S> dependency_failure(const Word& w, double word_scale, Side side, std::vector<S> coeffs, double res_l,
                                double res_r) const {
    DependencyCertificate<S> dc{w, words, std::move(coeffs), scales, word_scale, side, res_l, res_r};
    return finish(not_equivalent<S>(EngineKind::Closure, dc));
  }

  void push(Word w, Matrix<S> p, Matrix<S> q, double scale) {
    words.push_back(std::move(w));
    P.push_back(std::move(p));
    Q.push_back(std::move(q));
    scales.push_back(scale);
  }
};

// Exact fallback: membership through echelon bases of P, of Q and of the stacked
// pairs P ⊕ Q. With both sides dependent, the relations agree iff the
// stacked pair is dependent too (the basis P_i and Q_i are independent, so
// each relation is unique). Coefficients are solved only for a certificate.
inline Verdict<GaussianRational> echelon_closure(const LetterSet<GaussianRational>& letters) {
  using S = GaussianRational;
  const std::uint32_t alphabet = letters.alphabet_size();
  const std::size_t m = letters.left[0].rows();
  const std::size_t mm = m * m;
  ClosureState<S> st{letters, std::chrono::steady_clock::now(), 0.0, {}, {}, {}, {}, 0};
  EchelonBasis<S> left(mm), right(mm), joint(2 * mm);
  auto stacked = [mm](const Matrix<S>& p, const Matrix<S>& q) {
    std::vector<S> v(2 * mm);
    std::copy(p.flat().begin(), p.flat().end(), v.begin());
    std::copy(q.flat().begin(), q.flat().end(), v.begin() + static_cast<std::ptrdiff_t>(mm));
    return v;
  };
  auto relation = [](const std::vector<Matrix<S>>& basis, const Matrix<S>& target) {
    return least_squares_coeffs<S>(std::span<const Matrix<S>>(basis), target).coeffs;
  };

  const Matrix<S> I = Matrix<S>::identity(m);
  left.adjoin_reduced(left.reduce(I.flat()));
  right.adjoin_reduced(right.reduce(I.flat()));
  joint.adjoin_reduced(joint.reduce(stacked(I, I)));
  st.push(Word(alphabet), I, I, 1.0);

  for (std::size_t idx = 0; idx < st.words.size(); ++idx) {
    for (std::uint32_t g = 0; g < alphabet; ++g) {
      ++st.candidates;
      Word w = st.words[idx];
      w.append(g, 1);
      Matrix<S> Pc = mat_mul(st.P[idx], letters.left[g]);
      Matrix<S> Qc = mat_mul(st.Q[idx], letters.right[g]);
      auto rl = left.reduce(Pc.flat());
      auto rr = right.reduce(Qc.flat());
      const bool dep_l = detail::vec_is_zero<S>(rl), dep_r = detail::vec_is_zero<S>(rr);
      if (dep_l && dep_r && joint.contains(stacked(Pc, Qc))) continue;
      if (dep_l) {
        auto c = relation(st.P, Pc);
        const double res = combination_residual(Qc, st.Q, c);
        return st.dependency_failure(w, 1.0, Side::Left, std::move(c), 0.0, res);
      }
      if (dep_r) {
        auto e = relation(st.Q, Qc);
        const double res = combination_residual(Pc, st.P, e);
        return st.dependency_failure(w, 1.0, Side::Right, std::move(e), res, 0.0);
      }
      if (!(trace(Pc) == trace(Qc))) return st.trace_failure(w, 1.0);
      left.adjoin_reduced(std::move(rl));
      right.adjoin_reduced(std::move(rr));
      joint.adjoin_reduced(joint.reduce(stacked(Pc, Qc)));
      st.push(std::move(w), std::move(Pc), std::move(Qc), 1.0);
    }
  }
  return st.finish(Verdict<S>{});
}

// Gaussian-integer matrix over a positive common denominator.
struct IntMatrix {
  std::vector<mpz_class> re, im;
  mpz_class den = 1;
};

inline IntMatrix to_int_matrix(const Matrix<GaussianRational>& a) {
  IntMatrix out;
  for (const auto& z : a.flat()) {
    mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), z.re().get_den_mpz_t());
    mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), z.im().get_den_mpz_t());
  }
  for (const auto& z : a.flat()) {
    out.re.push_back(z.re().get_num() * (out.den / z.re().get_den()));
    out.im.push_back(z.im().get_num() * (out.den / z.im().get_den()));
  }
  return out;
}

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b, std::size_t m) {
  IntMatrix c;
  c.re.assign(m * m, 0);
  c.im.assign(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const auto &ar = a.re[i * m + k], &ai = a.im[i * m + k];
      if (ar == 0 && ai == 0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const auto &br = b.re[k * m + j], &bi = b.im[k * m + j];
        c.re[i * m + j] += ar * br - ai * bi;
        c.im[i * m + j] += ar * bi + ai * br;
      }
    }
  }
  c.den = a.den * b.den;
  mpz_class g = c.den;
  for (std::size_t i = 0; i < m * m && g != 1; ++i) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.re[i].get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.im[i].get_mpz_t());
  }
  if (g != 1) {
    for (auto& x : c.re) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    for (auto& x : c.im) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c.den.get_mpz_t(), c.den.get_mpz_t(), g.get_mpz_t());
  }
  return c;
}

// tr(a* b) scaled by a.den·b.den
inline std::pair<mpz_class, mpz_class> int_inner(const IntMatrix& a, const IntMatrix& b) {
  mpz_class re = 0, im = 0;
  for (std::size_t i = 0; i < a.re.size(); ++i) {
    re += a.re[i] * b.re[i] + a.im[i] * b.im[i];
    im += a.re[i] * b.im[i] - a.im[i] * b.re[i];
  }
  return {re, im};
}

// With basis words spanning all of M_m on both sides, equal inner products
// tr(b_j* c) for every basis word b_j and every c in {1} ∪ basis·letters give
// identical coordinates to every word on both sides, hence equal traces. The
// first unequal pair is returned as the word b_j*·c.
inline std::optional<Word> gram_mismatch(const LetterSet<GaussianRational>& letters, const ModularClosure& mc) {
  const std::size_t m = letters.left[0].rows(), d = mc.words.size();
  const auto alphabet = letters.alphabet_size();
  std::vector<IntMatrix> Lg, Rg;
  for (std::uint32_t g = 0; g < alphabet; ++g) {
    Lg.push_back(to_int_matrix(letters.left[g]));
    Rg.push_back(to_int_matrix(letters.right[g]));
  }
  std::vector<IntMatrix> BL{to_int_matrix(Matrix<GaussianRational>::identity(m))}, BR{BL[0]};
  for (std::size_t i = 1; i < d; ++i) {
    BL.push_back(int_mul(BL[mc.parent[i]], Lg[mc.letter[i]], m));
    BR.push_back(int_mul(BR[mc.parent[i]], Rg[mc.letter[i]], m));
  }
  auto check = [&](const IntMatrix& cl, const IntMatrix& cr, const Word& cw) -> std::optional<Word> {
    for (std::size_t j = 0; j < d; ++j) {
      auto [lr, li] = int_inner(BL[j], cl);
      auto [rr, ri] = int_inner(BR[j], cr);
      const mpz_class sl = BR[j].den * cr.den, sr = BL[j].den * cl.den;
      if (lr * sl != rr * sr || li * sl != ri * sr) {
        Word w = mc.words[j].star_reversed();
        for (const auto& run : cw.runs()) w.append(run.letter, run.exponent);
        return w;
      }
    }
    return std::nullopt;
  };
  if (auto w = check(BL[0], BR[0], mc.words[0])) return w;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::uint32_t g = 0; g < alphabet; ++g) {
      Word cw = mc.words[i];
      cw.append(g, 1);
      if (auto w = check(int_mul(BL[i], Lg[g], m), int_mul(BR[i], Rg[g], m), cw)) return w;
    }
  }
  return std::nullopt;
}

// Exact mode. The basis is found over F_p, where arithmetic stays word
// sized; independence there lifts to Q(i). A trace mismatch over F_p is a
// mismatch over Q(i). A closed run that spans all of M_m is confirmed by
// the exact Gram comparison. Anything else falls back to the echelon path.
inline Verdict<GaussianRational> exact_closure(const LetterSet<GaussianRational>& letters) {
  using S = GaussianRational;
  const std::size_t m = letters.left[0].rows();
  const bool star_paired = letters.alphabet_size() % 2 == 0;
  ModularClosure mc = modular_closure(letters.left, letters.right);
  ClosureState<S> st{letters, std::chrono::steady_clock::now(), 0.0, mc.words, {}, {}, {}, mc.candidates};

  std::optional<Word> suspect;
  if (mc.outcome == ModularClosure::Outcome::TraceMismatch) {
    suspect = mc.failing;
  } else if (mc.outcome == ModularClosure::Outcome::Closed && mc.words.size() == m * m && star_paired) {
    suspect = gram_mismatch(letters, mc);
    if (!suspect) return st.finish(Verdict<S>{});
  }
  if (suspect && !(trace(eval_word<S>(*suspect, letters.left)) == trace(eval_word<S>(*suspect, letters.right)))) {
    return st.trace_failure(*suspect, 1.0);
  }
  return echelon_closure(letters);
}

}  // namespace detail

/// Lockstep spanning of the two unital algebras generated by the left and
/// right letters.
///
/// Basis words start from the empty word and grow by right-multiplying each
/// basis word by each letter, in length-lex order. A candidate word that is
/// dependent on one side must satisfy the same relation on the other; a
/// candidate independent on both sides is adjoined after its traces are
/// compared. The loop stops once the span is closed under every letter, so
/// the basis never exceeds m² words.
///
/// When it closes without a violation, w(L) -> w(R) extends to a trace
/// preserving *-isomorphism (letters come in adjoint pairs), which is
/// exactly trace equality for every word.
///
/// Float mode rescales each letter pair to unit max norm and each adjoined
/// basis pair to unit max norm; relations are homogeneous so neither changes
/// the verdict, and candidates stay at unit scale so the 1e-10 span floor
/// separates true zeros from small words.
template <Scalar S>
Verdict<S> algebra_closure(const LetterSet<S>& letters, double tol = 1e-8, double rank_tol = 1e-10) {
  detail::require_letter_set(letters, "algebra_closure");
  if constexpr (is_exact_v<S>) {
    (void)tol;
    (void)rank_tol;
    return detail::exact_closure(letters);
  } else {
    const std::uint32_t alphabet = letters.alphabet_size();
    const std::size_t m = letters.left[0].rows();
    detail::ClosureState<S> st{letters, std::chrono::steady_clock::now(), tol, {}, {}, {}, {}, 0};

    std::vector<Matrix<S>> L = letters.left, R = letters.right;
    std::vector<double> letter_scale(alphabet, 1.0);
    for (std::uint32_t g = 0; g < alphabet; ++g) {
      const double mx = std::max(frobenius_norm(L[g]), frobenius_norm(R[g]));
      if (mx > 0.0) {
        letter_scale[g] = 1.0 / mx;
        L[g] *= S(letter_scale[g], 0.0);
        R[g] *= S(letter_scale[g], 0.0);
      }
    }

    SpanBasis<S> left_span(m * m, rank_tol), right_span(m * m, rank_tol);
    {
      const double s = 1.0 / std::sqrt(static_cast<double>(m));
      const Matrix<S> I = Matrix<S>::identity(m) * S(s, 0.0);
      left_span.adjoin(left_span.project(I.flat()));
      right_span.adjoin(right_span.project(I.flat()));
      st.push(Word(alphabet), I, I, s);
    }

    for (std::size_t idx = 0; idx < st.words.size(); ++idx) {
      for (std::uint32_t g = 0; g < alphabet; ++g) {
        ++st.candidates;
        Word w = st.words[idx];
        w.append(g, 1);
        const double wscale = st.scales[idx] * letter_scale[g];
        Matrix<S> Pc = mat_mul(st.P[idx], L[g]);
        Matrix<S> Qc = mat_mul(st.Q[idx], R[g]);

        auto pl = left_span.project(Pc.flat());
        if (pl.in_span) {
          auto c = left_span.coefficients(pl);
          const double cross = detail::combination_residual(Qc, st.Q, c);
          if (cross > tol * (1.0 + frobenius_norm(Qc))) {
            return st.dependency_failure(w, wscale, Side::Left, std::move(c), pl.residual_norm, cross);
          }
          continue;
        }
        auto pr = right_span.project(Qc.flat());
        if (pr.in_span) {
          auto e = right_span.coefficients(pr);
          const double cross = detail::combination_residual(Pc, st.P, e);
          if (cross > tol * (1.0 + frobenius_norm(Pc))) {
            return st.dependency_failure(w, wscale, Side::Right, std::move(e), cross, pr.residual_norm);
          }
          continue;  // relation holds within tolerance on both sides
        }

        // independent on both sides: adjoin at unit scale
        const double sigma = 1.0 / std::max(pl.target_norm, pr.target_norm);
        const S sg(sigma, 0.0);
        Pc *= sg;
        Qc *= sg;
        for (auto* proj : {&pl, &pr}) {
          for (auto& y : proj->y) y *= sg;
          for (auto& x : proj->residual) x *= sg;
          proj->residual_norm *= sigma;
        }
        if (!scalars_agree(trace(Pc), trace(Qc), tol)) return st.trace_failure(w, wscale * sigma);
        left_span.adjoin(std::move(pl));
        right_span.adjoin(std::move(pr));
        st.push(std::move(w), std::move(Pc), std::move(Qc), wscale * sigma);
      }
    }
    return st.finish(Verdict<S>{});
  }
}

/// Two-letter closure on (X, X*) versus (Y, Y*).
template <Scalar S>
Verdict<S> algebra_closure(const Matrix<S>& X, const Matrix<S>& Y, double tol = 1e-8) {
  require_same_size(X, Y, "algebra_closure");
  return algebra_closure(star_letters(X, Y), tol);
}

}  // namespace unieq
