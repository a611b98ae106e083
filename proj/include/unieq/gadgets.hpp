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

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "unieq/errors.hpp"
#include "unieq/matrix.hpp"

namespace unieq {

template <Scalar S>
struct MatrixPair {
  Matrix<S> A;
  Matrix<S> B;
};

/// Relation a set of pairs must satisfy through one common unitary U:
///   1: A = U B U*     2: A = U B Uᵀ     3: A = Ū B U*     4: A = Ū B Uᵀ
enum class Relation { SimilarU = 1, CongruentU = 2, SimilarUbar = 3, CongruentUbar = 4 };

/// Four (possibly empty) sets of n×n pairs; sets[c] holds S_{c+1}.
template <Scalar S>
struct ProblemInstance {
  std::size_t n = 0;
  std::array<std::vector<MatrixPair<S>>, 4> sets;

  std::array<std::size_t, 4> counts() const {
    return {sets[0].size(), sets[1].size(), sets[2].size(), sets[3].size()};
  }
  std::size_t total_pairs() const { return sets[0].size() + sets[1].size() + sets[2].size() + sets[3].size(); }
  bool only_similarity() const { return !sets[0].empty() && sets[1].empty() && sets[2].empty() && sets[3].empty(); }

  void validate() const {
    if (n == 0) throw InputError("instance dimension n must be positive");
    if (total_pairs() == 0) throw InputError("instance has no pairs");
    for (std::size_t c = 0; c < 4; ++c) {
      for (std::size_t p = 0; p < sets[c].size(); ++p) {
        for (const auto* m : {&sets[c][p].A, &sets[c][p].B}) {
          if (m->rows() != n || m->cols() != n) {
            throw DimensionError("S" + std::to_string(c + 1) + "[" + std::to_string(p) + "] is " +
                                 std::to_string(m->rows()) + "x" + std::to_string(m->cols()) + ", expected " +
                                 std::to_string(n) + "x" + std::to_string(n));
          }
        }
      }
    }
  }
};

struct Placement {
  int set_id = 1;  // 1..4
  std::size_t pair_index = 0;
  std::size_t i = 0;  // 1-based block row
  std::size_t j = 0;  // 1-based block column
  friend bool operator==(const Placement&, const Placement&) = default;
};

enum class LayoutKind { Similarity, General };

/// Parity class of block (i, j), 1-based: odd/even -> 1, odd/odd -> 2,
/// even/even -> 3, even/odd -> 4.
inline int slot_class(std::size_t i, std::size_t j) {
  const bool io = i % 2 == 1, jo = j % 2 == 1;
  if (io && !jo) return 1;
  if (io && jo) return 2;
  if (!io && !jo) return 3;
  return 4;
}

struct GadgetLayout {
  std::size_t n = 0;
  std::size_t k = 0;
  LayoutKind kind = LayoutKind::General;
  std::vector<Placement> placements;

  void validate() const {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& p : placements) {
      if (p.i < 1 || p.j > k || p.j < p.i + 2) {
        throw DimensionError("placement (" + std::to_string(p.i) + "," + std::to_string(p.j) +
                             ") must satisfy 1 <= i, j <= k = " + std::to_string(k) + ", j - i >= 2");
      }
      if (!seen.insert({p.i, p.j}).second) {
        throw DimensionError("block (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") used twice");
      }
      if (kind == LayoutKind::General && slot_class(p.i, p.j) != p.set_id) {
        throw DimensionError("placement of S" + std::to_string(p.set_id) + " at (" + std::to_string(p.i) + "," +
                             std::to_string(p.j) + ") violates the parity rule");
      }
    }
  }
};

template <Scalar S>
struct Gadget {
  Matrix<S> M;
  GadgetLayout layout;
};

/// Smallest k whose j - i >= 2 slots cover each parity class's demand; each
/// class is filled row-major (smallest i, then smallest j).
inline GadgetLayout plan_layout(std::size_t m1, std::size_t m2, std::size_t m3, std::size_t m4, std::size_t n) {
  const std::array<std::size_t, 4> need{m1, m2, m3, m4};
  if (m1 + m2 + m3 + m4 == 0) throw InputError("plan_layout: no pairs to place");
  if (n == 0) throw InputError("plan_layout: n must be positive");
  for (std::size_t k = 3;; ++k) {
    std::array<std::vector<std::pair<std::size_t, std::size_t>>, 4> slots;
    for (std::size_t i = 1; i <= k; ++i) {
      for (std::size_t j = i + 2; j <= k; ++j) slots[slot_class(i, j) - 1].emplace_back(i, j);
    }
    bool fits = true;
    for (std::size_t c = 0; c < 4; ++c) fits = fits && slots[c].size() >= need[c];
    if (!fits) continue;
    GadgetLayout layout{n, k, LayoutKind::General, {}};
    for (std::size_t c = 0; c < 4; ++c) {
      for (std::size_t p = 0; p < need[c]; ++p) {
        layout.placements.push_back({static_cast<int>(c + 1), p, slots[c][p].first, slots[c][p].second});
      }
    }
    return layout;
  }
}

/// k = m + 2 with pair i at block (i, i + 2).
inline GadgetLayout similarity_layout(std::size_t m, std::size_t n) {
  if (m == 0) throw InputError("similarity_layout: no pairs to place");
  GadgetLayout layout{n, m + 2, LayoutKind::Similarity, {}};
  for (std::size_t p = 0; p < m; ++p) layout.placements.push_back({1, p, p + 1, p + 3});
  return layout;
}

namespace detail {

template <Scalar S>
Matrix<S> gadget_skeleton(std::size_t n, std::size_t k) {
  Matrix<S> M(n * k, n * k);
  for (std::size_t b = 0; b + 1 < k; ++b) {
    for (std::size_t d = 0; d < n; ++d) M(b * n + d, (b + 1) * n + d) = ScalarTraits<S>::from_int(1);
  }
  return M;
}

template <Scalar S>
const MatrixPair<S>& pair_for(const ProblemInstance<S>& inst, const Placement& p) {
  if (p.set_id < 1 || p.set_id > 4) throw DimensionError("placement set id out of range");
  const auto& set = inst.sets[static_cast<std::size_t>(p.set_id - 1)];
  if (p.pair_index >= set.size()) throw DimensionError("placement refers to a missing pair");
  return set[p.pair_index];
}

template <Scalar S>
std::pair<Gadget<S>, Gadget<S>> fill_gadgets(const ProblemInstance<S>& inst, const GadgetLayout& layout) {
  layout.validate();
  if (layout.n != inst.n) throw DimensionError("layout block size differs from instance n");
  // every pair placed exactly once
  std::array<std::vector<int>, 4> hits;
  for (std::size_t c = 0; c < 4; ++c) hits[c].assign(inst.sets[c].size(), 0);
  for (const auto& p : layout.placements) {
    detail::pair_for(inst, p);
    ++hits[static_cast<std::size_t>(p.set_id - 1)][p.pair_index];
  }
  for (std::size_t c = 0; c < 4; ++c) {
    for (int h : hits[c]) {
      if (h != 1) throw DimensionError("layout must place every pair exactly once");
    }
  }
  Gadget<S> ga{gadget_skeleton<S>(inst.n, layout.k), layout};
  Gadget<S> gb{ga.M, layout};
  for (const auto& p : layout.placements) {
    const auto& pr = pair_for(inst, p);
    ga.M.set_block(p.i - 1, p.j - 1, pr.A);
    gb.M.set_block(p.i - 1, p.j - 1, pr.B);
  }
  return {std::move(ga), std::move(gb)};
}

}  // namespace detail

/// Gadgets whose unitary similarity is equivalent to simultaneous unitary
/// similarity of the pairs. Default layout: k = m + 2, pair i at (i, i + 2).
template <Scalar S>
std::pair<Gadget<S>, Gadget<S>> build_similarity_gadget(const std::vector<MatrixPair<S>>& pairs, std::size_t n,
                                                        std::optional<GadgetLayout> layout = std::nullopt) {
  if (pairs.empty()) throw InputError("build_similarity_gadget: no pairs");
  ProblemInstance<S> inst;
  inst.n = n;
  inst.sets[0] = pairs;
  inst.validate();
  GadgetLayout lay = layout ? *layout : similarity_layout(pairs.size(), n);
  if (lay.kind != LayoutKind::Similarity) throw DimensionError("similarity gadget needs a similarity layout");
  return detail::fill_gadgets(inst, lay);
}

/// Parity-placed gadgets: A is unitarily congruent to B iff one U satisfies
/// all four relation families of the instance.
template <Scalar S>
std::pair<Gadget<S>, Gadget<S>> build_general_gadget(const ProblemInstance<S>& inst,
                                                     std::optional<GadgetLayout> layout = std::nullopt) {
  inst.validate();
  const auto c = inst.counts();
  GadgetLayout lay = layout ? *layout : plan_layout(c[0], c[1], c[2], c[3], inst.n);
  if (lay.kind != LayoutKind::General) throw DimensionError("general gadget needs a parity layout");
  return detail::fill_gadgets(inst, lay);
}

namespace detail {

template <Scalar S>
Matrix<S> congruence_K(const Matrix<S>& A, bool with_third) {
  require_square(A, "build_congruence_K");
  const std::size_t n = A.rows();
  const Matrix<S> Abar = conjugate(A);
  Matrix<S> K = gadget_skeleton<S>(n, 4);
  K.set_block(0, 2, mat_mul(A, adjoint(A)));
  K.set_block(0, 3, mat_mul(A, Abar));
  if (with_third) K.set_block(1, 3, mat_mul(transpose(A), Abar));
  return K;
}

}  // namespace detail

/// 4n×4n gadget carrying AA*, AĀ at (1,3), (1,4) and AᵀĀ at (2,4).
template <Scalar S>
Matrix<S> build_congruence_K(const Matrix<S>& A) {
  return detail::congruence_K(A, true);
}

/// As build_congruence_K with the (2,4) block zeroed; valid when A or B is
/// nonsingular.
template <Scalar S>
Matrix<S> build_congruence_K_prime(const Matrix<S>& A) {
  return detail::congruence_K(A, false);
}

/// True when m is nonsingular for the congruence shortcut: exact determinant
/// nonzero, or |det| of the jointly rescaled matrix above 1e-10.
template <Scalar S>
bool shortcut_nonsingular(const Matrix<S>& m, double scale) {
  if constexpr (is_exact_v<S>) {
    (void)scale;
    return !determinant(m).is_zero();
  } else {
    return std::abs(determinant(scaled(m, scale))) > 1e-10;
  }
}

/// (AA*, BB*), (AĀ, BB̄), (AᵀĀ, BᵀB̄): simultaneously unitarily similar iff A
/// and B are unitarily congruent. With allow_shortcut and A or B nonsingular
/// the third pair is dropped.
template <Scalar S>
std::vector<MatrixPair<S>> congruence_triple(const Matrix<S>& A, const Matrix<S>& B, bool allow_shortcut = true) {
  require_same_size(A, B, "congruence_triple");
  const Matrix<S> Abar = conjugate(A), Bbar = conjugate(B);
  std::vector<MatrixPair<S>> out;
  out.push_back({mat_mul(A, adjoint(A)), mat_mul(B, adjoint(B))});
  out.push_back({mat_mul(A, Abar), mat_mul(B, Bbar)});
  bool drop_third = false;
  if (allow_shortcut) {
    const Matrix<S>* both[] = {&A, &B};
    const double c = prescale_factor<S>(both);
    drop_third = shortcut_nonsingular(A, c) || shortcut_nonsingular(B, c);
  }
  if (!drop_third) out.push_back({mat_mul(transpose(A), Abar), mat_mul(transpose(B), Bbar)});
  return out;
}

}  // namespace unieq
