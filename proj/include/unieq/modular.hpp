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
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "unieq/gaussian_rational.hpp"
#include "unieq/matrix.hpp"
#include "unieq/words.hpp"

namespace unieq::detail {

/// Arithmetic in F_p for a 62-bit prime p ≡ 1 (mod 4), with Gaussian
/// rationals sent to F_p by i ↦ a fixed square root of -1. The map is a ring
/// homomorphism on every entry whose denominators are prime to p, so vectors
/// independent after reduction are independent over Q(i).
struct ModP {
  static constexpr std::uint64_t p = 4611686018427387817ULL;
  static constexpr std::uint64_t sqrt_minus_one = 4490822397581186023ULL;

  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + (p - b); }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  static std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a)) {
      if (e & 1) r = mul(r, a);
    }
    return r;
  }
  static std::uint64_t inv(std::uint64_t a) { return pow(a, p - 2); }

  static std::optional<std::uint64_t> reduce(const mpq_class& q) {
    const mpz_class modulus(static_cast<unsigned long>(p));
    mpz_class num = q.get_num() % modulus, den = q.get_den() % modulus;
    if (num < 0) num += modulus;
    if (den == 0) return std::nullopt;
    return mul(static_cast<std::uint64_t>(num.get_ui()), inv(static_cast<std::uint64_t>(den.get_ui())));
  }

  static std::optional<std::uint64_t> reduce(const GaussianRational& z) {
    auto re = reduce(z.re()), im = reduce(z.im());
    if (!re || !im) return std::nullopt;
    return add(*re, mul(*im, sqrt_minus_one));
  }
};

static_assert(sizeof(unsigned long) == 8, "ModP::reduce assumes 64-bit unsigned long");

using ModMatrix = std::vector<std::uint64_t>;  // row-major m×m

inline std::optional<ModMatrix> reduce_matrix(const Matrix<GaussianRational>& a) {
  ModMatrix out;
  out.reserve(a.flat().size());
  for (const auto& z : a.flat()) {
    auto r = ModP::reduce(z);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return out;
}

inline ModMatrix mod_mul(const ModMatrix& a, const ModMatrix& b, std::size_t m) {
  ModMatrix c(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const std::uint64_t aik = a[i * m + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i * m + j] = ModP::add(c[i * m + j], ModP::mul(aik, b[k * m + j]));
    }
  }
  return c;
}

/// Row-echelon membership over F_p; rows have a unit pivot.
class ModEchelon {
 public:
  explicit ModEchelon(std::size_t dim) : dim_(dim) {}

  std::size_t size() const { return rows_.size(); }

  std::vector<std::uint64_t> reduce(std::vector<std::uint64_t> r) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::uint64_t c = r[pivots_[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (rows_[i][j] != 0) r[j] = ModP::sub(r[j], ModP::mul(c, rows_[i][j]));
      }
    }
    return r;
  }

  static bool is_zero(const std::vector<std::uint64_t>& r) {
    for (auto x : r) {
      if (x != 0) return false;
    }
    return true;
  }

  void adjoin_reduced(std::vector<std::uint64_t> r) {
    std::size_t piv = 0;
    while (r[piv] == 0) ++piv;
    const std::uint64_t s = ModP::inv(r[piv]);
    for (auto& x : r) x = ModP::mul(x, s);
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Outcome of the lockstep closure run over F_p. Basis word i is
/// basis[parent[i]] followed by letter[i]; word 0 is empty.
struct ModularClosure {
  enum class Outcome { Closed, TraceMismatch, DependencyMismatch, Unreducible };
  Outcome outcome = Outcome::Closed;
  std::vector<std::size_t> parent;
  std::vector<std::uint32_t> letter;
  std::vector<Word> words;
  std::optional<Word> failing;
  std::size_t candidates = 0;
};

inline ModularClosure modular_closure(const std::vector<Matrix<GaussianRational>>& left,
                                      const std::vector<Matrix<GaussianRational>>& right) {
  ModularClosure out;
  const std::size_t m = left[0].rows(), mm = m * m;
  const auto alphabet = static_cast<std::uint32_t>(left.size());
  std::vector<ModMatrix> L, R;
  for (std::uint32_t g = 0; g < alphabet; ++g) {
    auto l = reduce_matrix(left[g]), r = reduce_matrix(right[g]);
    if (!l || !r) {
      out.outcome = ModularClosure::Outcome::Unreducible;
      return out;
    }
    L.push_back(std::move(*l));
    R.push_back(std::move(*r));
  }
  auto trace_of = [m](const ModMatrix& a) {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < m; ++i) t = ModP::add(t, a[i * m + i]);
    return t;
  };
  auto stacked = [mm](const ModMatrix& a, const ModMatrix& b) {
    std::vector<std::uint64_t> v(a);
    v.insert(v.end(), b.begin(), b.begin() + static_cast<std::ptrdiff_t>(mm));
    return v;
  };

  ModEchelon left_e(mm), right_e(mm), joint_e(2 * mm);
  ModMatrix I(mm, 0);
  for (std::size_t i = 0; i < m; ++i) I[i * m + i] = 1;
  left_e.adjoin_reduced(left_e.reduce(I));
  right_e.adjoin_reduced(right_e.reduce(I));
  joint_e.adjoin_reduced(joint_e.reduce(stacked(I, I)));
  std::vector<ModMatrix> P{I}, Q{I};
  out.parent.push_back(0);
  out.letter.push_back(0);
  out.words.emplace_back(alphabet);

  for (std::size_t idx = 0; idx < P.size(); ++idx) {
    for (std::uint32_t g = 0; g < alphabet; ++g) {
      ++out.candidates;
      ModMatrix Pc = mod_mul(P[idx], L[g], m), Qc = mod_mul(Q[idx], R[g], m);
      auto rj = joint_e.reduce(stacked(Pc, Qc));
      if (ModEchelon::is_zero(rj)) continue;
      Word w = out.words[idx];
      w.append(g, 1);
      auto rl = left_e.reduce(Pc), rr = right_e.reduce(Qc);
      if (ModEchelon::is_zero(rl) || ModEchelon::is_zero(rr)) {
        out.outcome = ModularClosure::Outcome::DependencyMismatch;
        out.failing = std::move(w);
        return out;
      }
      if (trace_of(Pc) != trace_of(Qc)) {
        out.outcome = ModularClosure::Outcome::TraceMismatch;
        out.failing = std::move(w);
        return out;
      }
      left_e.adjoin_reduced(std::move(rl));
      right_e.adjoin_reduced(std::move(rr));
      joint_e.adjoin_reduced(std::move(rj));
      P.push_back(std::move(Pc));
      Q.push_back(std::move(Qc));
      out.parent.push_back(idx);
      out.letter.push_back(g);
      out.words.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace unieq::detail
