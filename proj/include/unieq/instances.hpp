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

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "unieq/engines.hpp"
#include "unieq/gadgets.hpp"
#include "unieq/matrix.hpp"

namespace unieq {

enum class InstanceLabel { Yes, NoPerturbed };

inline const char* label_name(InstanceLabel l) { return l == InstanceLabel::Yes ? "YES" : "NO-perturbed"; }

template <Scalar S>
struct GeneratedInstance {
  ProblemInstance<S> inst;
  Matrix<S> witness;
  std::uint64_t seed = 0;
  InstanceLabel label = InstanceLabel::Yes;
};

using Rng = std::mt19937_64;

/// Complex Gaussian matrix (independent N(0,1) real and imaginary parts).
inline FloatMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  FloatMatrix m(rows, cols);
  for (auto& x : m.flat()) {
    const double re = nd(rng);
    const double im = nd(rng);
    x = Complex(re, im);
  }
  return m;
}

inline FloatMatrix random_unit_gaussian(std::size_t n, Rng& rng) {
  FloatMatrix m = random_gaussian(n, n, rng);
  return m * Complex(1.0 / frobenius_norm(m), 0.0);
}

/// Gram-Schmidt (two passes) on the columns of a complex Gaussian sample.
/// Q of a QR factorization whose R has a positive real diagonal, which is the
/// phase normalization that makes the distribution Haar.
inline FloatMatrix random_unitary(std::size_t n, Rng& rng) {
  if (n == 0) throw DimensionError("random_unitary: n must be positive");
  FloatMatrix G = random_gaussian(n, n, rng);
  FloatMatrix Q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = G(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c = 0; c < j; ++c) {
        Complex d{};
        for (std::size_t i = 0; i < n; ++i) d += std::conj(Q(i, c)) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= d * Q(i, c);
      }
    }
    double nrm = 0.0;
    for (const auto& x : v) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) Q(i, j) = v[i] / nrm;
  }
  return Q;
}

inline FloatMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(n, rng);
}

/// A = f(U, B) for the four relation families.
template <Scalar S>
Matrix<S> apply_relation(Relation rel, const Matrix<S>& U, const Matrix<S>& B) {
  switch (rel) {
    case Relation::SimilarU: return mat_mul(mat_mul(U, B), adjoint(U));
    case Relation::CongruentU: return mat_mul(mat_mul(U, B), transpose(U));
    case Relation::SimilarUbar: return mat_mul(mat_mul(conjugate(U), B), adjoint(U));
    case Relation::CongruentUbar: return mat_mul(mat_mul(conjugate(U), B), transpose(U));
  }
  throw InputError("unknown relation");
}

/// YES instance: B-side matrices Gaussian with unit Frobenius norm, A-side
/// matrices obtained from one seeded unitary through each set's relation.
inline GeneratedInstance<Complex> make_yes_instance(std::size_t n, std::array<std::size_t, 4> m, std::uint64_t seed) {
  if (m[0] + m[1] + m[2] + m[3] == 0) throw InputError("make_yes_instance: all set sizes are zero");
  if (n == 0) throw InputError("make_yes_instance: n must be positive");
  Rng rng(seed);
  GeneratedInstance<Complex> g;
  g.seed = seed;
  g.witness = random_unitary(n, rng);
  g.inst.n = n;
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t p = 0; p < m[c]; ++p) {
      FloatMatrix B = random_unit_gaussian(n, rng);
      FloatMatrix A = apply_relation(static_cast<Relation>(c + 1), g.witness, B);
      g.inst.sets[c].push_back({std::move(A), std::move(B)});
    }
  }
  return g;
}

/// Adds epsilon·E (E Gaussian, ‖E‖_F = 1) to the A side of one seeded choice
/// of pair. The result is NO only generically.
template <Scalar S>
GeneratedInstance<S> perturb_to_no(const GeneratedInstance<S>& g, double epsilon, std::uint64_t seed) {
  if (!(epsilon > 0.0)) throw InputError("perturb_to_no: epsilon must be positive");
  static_assert(!is_exact_v<S>, "perturbation is float-only");
  Rng rng(seed);
  GeneratedInstance<S> out = g;
  out.label = InstanceLabel::NoPerturbed;
  const std::size_t total = g.inst.total_pairs();
  std::uniform_int_distribution<std::size_t> pick(0, total - 1);
  std::size_t which = pick(rng);
  for (auto& set : out.inst.sets) {
    if (which < set.size()) {
      FloatMatrix E = random_unit_gaussian(g.inst.n, rng);
      set[which].A += E * Complex(epsilon, 0.0);
      break;
    }
    which -= set.size();
  }
  return out;
}

/// Gaussian-rational unitary via the Cayley transform U = (I − K)(I + K)^-1
/// of a skew-Hermitian K with small integer entries.
inline ExactMatrix random_rational_unitary(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<int> small(-2, 2);
  ExactMatrix K(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    K(i, i) = GaussianRational(0, small(rng));
    for (std::size_t j = i + 1; j < n; ++j) {
      GaussianRational z(small(rng), small(rng));
      K(i, j) = z;
      K(j, i) = -z.conj();
    }
  }
  const ExactMatrix I = ExactMatrix::identity(n);
  return mat_mul(I - K, inverse(I + K));
}

inline ExactMatrix random_small_rational(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  ExactMatrix m(n, n);
  for (auto& x : m.flat()) x = GaussianRational(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
  return m;
}

/// Exact counterpart of make_yes_instance with a rational unitary witness.
inline GeneratedInstance<GaussianRational> make_exact_yes_instance(std::size_t n, std::array<std::size_t, 4> m,
                                                                   std::uint64_t seed) {
  if (m[0] + m[1] + m[2] + m[3] == 0) throw InputError("make_exact_yes_instance: all set sizes are zero");
  Rng rng(seed);
  GeneratedInstance<GaussianRational> g;
  g.seed = seed;
  g.witness = random_rational_unitary(n, rng);
  g.inst.n = n;
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t p = 0; p < m[c]; ++p) {
      ExactMatrix B = random_small_rational(n, rng);
      ExactMatrix A = apply_relation(static_cast<Relation>(c + 1), g.witness, B);
      g.inst.sets[c].push_back({std::move(A), std::move(B)});
    }
  }
  return g;
}

struct IntertwinerSpace {
  std::vector<FloatMatrix> basis;
  // Smallest singular value kept as "nonzero" over the largest one treated as
  // zero; infinity when nothing falls below the threshold.
  double gap_ratio = std::numeric_limits<double>::infinity();
  bool marginal = false;
};

/// Basis of {W : AW = WB} (linear) or {W : AW̄ = WB} (conjugate-linear, a real
/// vector space, solved as a real system in W = P + iQ of twice the size).
/// Null directions are singular values at most 1e-10·σ_max; a gap ratio
/// under 10³ marks the answer as numerically marginal.
inline IntertwinerSpace intertwiner_space(const FloatMatrix& A, const FloatMatrix& B, bool conjugate_linear) {
  require_same_size(A, B, "intertwiner_space");
  const std::size_t m = A.rows();
  const std::size_t mm = m * m;
  auto var = [m](std::size_t i, std::size_t j) { return i + j * m; };

  Eigen::MatrixXd real_op;
  Eigen::MatrixXcd cplx_op;
  if (conjugate_linear) {
    real_op = Eigen::MatrixXd::Zero(2 * mm, 2 * mm);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t r = var(i, j);
        for (std::size_t l = 0; l < m; ++l) {
          const double ar = A(i, l).real(), ai = A(i, l).imag();
          const double br = B(l, j).real(), bi = B(l, j).imag();
          // Re: Ar P + Ai Q - P Br + Q Bi
          real_op(r, var(l, j)) += ar;
          real_op(r, mm + var(l, j)) += ai;
          real_op(r, var(i, l)) -= br;
          real_op(r, mm + var(i, l)) += bi;
          // Im: Ai P - Ar Q - P Bi - Q Br
          real_op(mm + r, var(l, j)) += ai;
          real_op(mm + r, mm + var(l, j)) -= ar;
          real_op(mm + r, var(i, l)) -= bi;
          real_op(mm + r, mm + var(i, l)) -= br;
        }
      }
    }
  } else {
    cplx_op = Eigen::MatrixXcd::Zero(mm, mm);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t r = var(i, j);
        for (std::size_t l = 0; l < m; ++l) {
          cplx_op(r, var(l, j)) += A(i, l);
          cplx_op(r, var(i, l)) -= B(l, j);
        }
      }
    }
  }

  IntertwinerSpace out;
  auto collect = [&](const auto& svd, auto&& to_matrix) {
    const auto& sv = svd.singularValues();
    const auto& V = svd.matrixV();
    const Eigen::Index cols = V.cols();
    const double smax = sv.size() ? sv(0) : 0.0;
    const double thr = 1e-10 * std::max(smax, 1e-300);
    double smallest_kept = std::numeric_limits<double>::infinity();
    double largest_null = 0.0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double s = c < sv.size() ? sv(c) : 0.0;
      if (s <= thr) {
        largest_null = std::max(largest_null, s);
        out.basis.push_back(to_matrix(V.col(c)));
      } else {
        smallest_kept = std::min(smallest_kept, s);
      }
    }
    if (!out.basis.empty() && std::isfinite(smallest_kept)) {
      out.gap_ratio = largest_null > 0.0 ? smallest_kept / largest_null : std::numeric_limits<double>::infinity();
    }
    out.marginal = out.gap_ratio < 1e3;
  };

  if (conjugate_linear) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(real_op, Eigen::ComputeFullV);
    collect(svd, [&](const auto& v) {
      FloatMatrix W(m, m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) W(i, j) = Complex(v(var(i, j)), v(mm + var(i, j)));
      }
      return W;
    });
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cplx_op, Eigen::ComputeFullV);
    collect(svd, [&](const auto& v) {
      FloatMatrix W(m, m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) W(i, j) = v(var(i, j));
      }
      return W;
    });
  }
  return out;
}

/// Blocks strictly below the block diagonal vanish (within tol, after
/// scaling W to unit Frobenius norm).
inline bool is_block_upper_triangular(const FloatMatrix& W, std::size_t n, double tol) {
  const double nrm = frobenius_norm(W);
  if (nrm == 0.0) return true;
  const std::size_t k = W.rows() / n;
  for (std::size_t bi = 0; bi < k; ++bi) {
    for (std::size_t bj = 0; bj < bi; ++bj) {
      if (frobenius_norm(W.block(bi, bj, n)) > tol * nrm) return false;
    }
  }
  return true;
}

/// W_ii = W_11 for every i (linear intertwiners), or W_ii = W_11 for odd i
/// and conj(W_11) for even i (conjugate-linear), within tol after
/// normalization. Block indices are 1-based in that description.
inline bool diagonal_blocks_match(const FloatMatrix& W, std::size_t n, bool alternate_conjugate, double tol) {
  const double nrm = frobenius_norm(W);
  if (nrm == 0.0) return true;
  const std::size_t k = W.rows() / n;
  const FloatMatrix first = W.block(0, 0, n);
  for (std::size_t b = 1; b < k; ++b) {
    const FloatMatrix expect = (alternate_conjugate && b % 2 == 1) ? conjugate(first) : first;
    if (distance(W.block(b, b, n), expect) > tol * nrm) return false;
  }
  return true;
}

}  // namespace unieq
