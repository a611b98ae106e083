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
#include <cstddef>
#include <span>
#include <vector>

#include "unieq/matrix.hpp"

namespace unieq {

namespace detail {

template <Scalar S>
S dot_conj(std::span<const S> a, std::span<const S> b) {
  if constexpr (is_exact_v<S>) {
    S acc{};
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero() || b[i].is_zero()) continue;
      acc += a[i].conj() * b[i];
    }
    return acc;
  } else {
    const double* x = reinterpret_cast<const double*>(a.data());
    const double* y = reinterpret_cast<const double*>(b.data());
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double xr = x[2 * i], xi = x[2 * i + 1], yr = y[2 * i], yi = y[2 * i + 1];
      re += xr * yr + xi * yi;
      im += xr * yi - xi * yr;
    }
    return S(re, im);
  }
}

// y -= c * x
template <Scalar S>
void axpy_sub(std::span<S> y, const S& c, std::span<const S> x) {
  if (ScalarTraits<S>::is_zero(c)) return;
  if constexpr (is_exact_v<S>) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!x[i].is_zero()) y[i] -= c * x[i];
    }
  } else {
    double* yy = reinterpret_cast<double*>(y.data());
    const double* xx = reinterpret_cast<const double*>(x.data());
    const double cr = c.real(), ci = c.imag();
    for (std::size_t i = 0; i < y.size(); ++i) {
      yy[2 * i] -= cr * xx[2 * i] - ci * xx[2 * i + 1];
      yy[2 * i + 1] -= cr * xx[2 * i + 1] + ci * xx[2 * i];
    }
  }
}

template <Scalar S>
double vec_norm(std::span<const S> v) {
  if constexpr (is_exact_v<S>) {
    mpq_class acc = 0;
    for (const auto& x : v) acc += x.norm2();
    return std::sqrt(acc.get_d());
  } else {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
  }
}

template <Scalar S>
bool vec_is_zero(std::span<const S> v) {
  for (const auto& x : v) {
    if (!ScalarTraits<S>::is_zero(x)) return false;
  }
  return true;
}

}  // namespace detail

/// Incrementally grown basis of a subspace of S^dim with an orthogonal
/// factorization behind it: the adjoined vectors b_0..b_{d-1} satisfy
/// b_i = sum_{j<=i} R(j,i) q_j with q_j mutually orthogonal.
///
/// Float mode keeps q_j orthonormal (two classical Gram-Schmidt passes per
/// projection). Exact mode keeps q_j unnormalized so everything stays
/// rational, and R has a unit diagonal.
template <Scalar S>
class SpanBasis {
 public:
  struct Projection {
    std::vector<S> y;  // coordinates along q_0..q_{d-1}
    std::vector<S> residual;
    double residual_norm = 0.0;
    double target_norm = 0.0;
    bool in_span = false;
  };

  explicit SpanBasis(std::size_t dim, double rank_tol = 1e-10) : dim_(dim), rank_tol_(rank_tol) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return q_.size(); }
  double rank_tol() const { return rank_tol_; }

  /// In float mode a vector is in the span when its residual is at most
  /// rank_tol·(1 + ‖v‖); exact mode demands a zero residual.
  Projection project(std::span<const S> v) const {
    if (v.size() != dim_) throw DimensionError("SpanBasis::project: wrong vector length");
    Projection p;
    p.y.assign(q_.size(), S{});
    p.residual.assign(v.begin(), v.end());
    const int passes = is_exact_v<S> ? 1 : 2;
    for (int pass = 0; pass < passes; ++pass) {
      std::vector<S> y(q_.size());
      for (std::size_t j = 0; j < q_.size(); ++j) {
        y[j] = detail::dot_conj<S>(q_[j], p.residual);
        if constexpr (is_exact_v<S>) y[j] /= qnorm2_[j];
      }
      for (std::size_t j = 0; j < q_.size(); ++j) {
        detail::axpy_sub<S>(p.residual, y[j], q_[j]);
        p.y[j] += y[j];
      }
    }
    p.residual_norm = detail::vec_norm<S>(p.residual);
    p.target_norm = detail::vec_norm<S>(v);
    if constexpr (is_exact_v<S>) {
      p.in_span = detail::vec_is_zero<S>(p.residual);
    } else {
      p.in_span = p.residual_norm <= rank_tol_ * (1.0 + p.target_norm);
    }
    return p;
  }

  /// Coefficients c with v ≈ sum_i c_i b_i, from a projection's coordinates.
  std::vector<S> coefficients(const Projection& p) const {
    const std::size_t d = q_.size();
    std::vector<S> c(d);
    for (std::size_t ii = d; ii-- > 0;) {
      S acc = p.y[ii];
      for (std::size_t l = ii + 1; l < d; ++l) acc -= r_[l][ii] * c[l];
      c[ii] = acc / r_[ii][ii];
    }
    return c;
  }

  /// Adjoin the vector whose projection is p. p must not be in the span.
  void adjoin(Projection p) {
    std::vector<S> col = std::move(p.y);
    if constexpr (is_exact_v<S>) {
      col.push_back(ScalarTraits<S>::from_int(1));
      qnorm2_.push_back(detail::dot_conj<S>(p.residual, p.residual));
    } else {
      const double nrm = p.residual_norm;
      col.push_back(S(nrm, 0.0));
      for (auto& x : p.residual) x /= nrm;
      qnorm2_.push_back(S(1.0, 0.0));
    }
    q_.push_back(std::move(p.residual));
    r_.push_back(std::move(col));
  }

 private:
  std::size_t dim_;
  double rank_tol_;
  std::vector<std::vector<S>> q_;
  std::vector<S> qnorm2_;
  std::vector<std::vector<S>> r_;  // r_[i] is column i of R, length i+1
};

/// Exact-mode span membership in row-echelon form: row i has a unit entry at
/// its pivot and zeros at the pivots of rows 0..i-1. Entry growth stays far
/// below that of an orthogonal basis. Membership only: no coefficients and
/// no least-squares residual.
template <Scalar S>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

  /// The part of v left after eliminating every pivot; zero iff v is in the span.
  std::vector<S> reduce(std::span<const S> v) const {
    if (v.size() != dim_) throw DimensionError("EchelonBasis::reduce: wrong vector length");
    std::vector<S> r(v.begin(), v.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const S c = r[pivots_[i]];
      if (!ScalarTraits<S>::is_zero(c)) detail::axpy_sub<S>(r, c, rows_[i]);
    }
    return r;
  }

  bool contains(std::span<const S> v) const { return detail::vec_is_zero<S>(reduce(v)); }

  /// Adjoins a nonzero reduced vector (the output of reduce).
  void adjoin_reduced(std::vector<S> r) {
    std::size_t piv = 0;
    while (piv < dim_ && ScalarTraits<S>::is_zero(r[piv])) ++piv;
    if (piv == dim_) throw DimensionError("EchelonBasis::adjoin_reduced: zero vector");
    const S inv = ScalarTraits<S>::from_int(1) / r[piv];
    for (auto& x : r) {
      if (!ScalarTraits<S>::is_zero(x)) x *= inv;
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<S>> rows_;
  std::vector<std::size_t> pivots_;
};

template <Scalar S>
struct LeastSquaresResult {
  std::vector<S> coeffs;
  double residual = 0.0;
  bool in_span = false;
};

/// Coefficients minimizing ‖target - sum c_i basis_i‖_F. Basis matrices that
/// are themselves dependent on earlier ones get coefficient zero.
///
/// `tol` is the float-mode span threshold (residual <= tol·(1 + ‖target‖_F));
/// exact mode ignores it and reports in_span only for a zero residual.
template <Scalar S>
LeastSquaresResult<S> least_squares_coeffs(std::span<const Matrix<S>> basis, const Matrix<S>& target,
                                           double tol = 1e-10) {
  for (const auto& b : basis) {
    if (b.rows() != target.rows() || b.cols() != target.cols()) {
      throw DimensionError("least_squares_coeffs: basis and target shapes differ");
    }
  }
  SpanBasis<S> span(target.size(), tol);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto p = span.project(basis[i].flat());
    if (p.in_span) continue;
    span.adjoin(std::move(p));
    kept.push_back(i);
  }
  auto p = span.project(target.flat());
  LeastSquaresResult<S> out;
  out.coeffs.assign(basis.size(), S{});
  auto c = span.coefficients(p);
  for (std::size_t j = 0; j < kept.size(); ++j) out.coeffs[kept[j]] = c[j];
  out.residual = p.residual_norm;
  out.in_span = p.in_span;
  return out;
}

}  // namespace unieq
