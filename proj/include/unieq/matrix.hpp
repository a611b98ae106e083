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
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "unieq/errors.hpp"
#include "unieq/scalar.hpp"

namespace unieq {

/// Dense row-major matrix over a scalar field. Values are immutable in
/// practice: every operation below returns a fresh matrix.
template <Scalar S>
class Matrix {
 public:
  using value_type = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S{}) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                           std::to_string(rows_ * cols_));
    }
  }
  Matrix(std::initializer_list<std::initializer_list<S>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::from_int(1);
    return m;
  }
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<S> flat() { return data_; }
  std::span<const S> flat() const { return data_; }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const S& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const S& c) { return a *= c; }
  friend Matrix operator*(const S& c, Matrix a) { return a *= c; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Copy of the n×n block at block coordinates (bi, bj), zero-based.
  Matrix block(std::size_t bi, std::size_t bj, std::size_t n) const {
    if ((bi + 1) * n > rows_ || (bj + 1) * n > cols_) throw DimensionError("block out of range");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(i, j) = (*this)(bi * n + i, bj * n + j);
    }
    return out;
  }

  void set_block(std::size_t bi, std::size_t bj, const Matrix& b) {
    if (!b.is_square()) throw DimensionError("set_block expects a square block");
    const std::size_t n = b.rows();
    if ((bi + 1) * n > rows_ || (bj + 1) * n > cols_) throw DimensionError("block out of range");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) (*this)(bi * n + i, bj * n + j) = b(i, j);
    }
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
  }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("shape mismatch in operator") + op);
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using FloatMatrix = Matrix<Complex>;
using ExactMatrix = Matrix<GaussianRational>;

namespace detail {

// Plain (a.re*b.re - a.im*b.im, ...) complex kernels; std::complex operator*
// pulls in the Annex G NaN recovery path, which dominates the hot loops.
inline void cmul_add_row(double* c, const double* b, double ar, double ai, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double br = b[2 * j];
    const double bi = b[2 * j + 1];
    c[2 * j] += ar * br - ai * bi;
    c[2 * j + 1] += ar * bi + ai * br;
  }
}

}  // namespace detail

template <Scalar S>
Matrix<S> mat_mul(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix<S> c(a.rows(), b.cols());
  const std::size_t inner = a.cols();
  const std::size_t ncols = b.cols();
  auto bf = b.flat();
  auto cf = c.flat();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    S* crow = cf.data() + i * ncols;
    for (std::size_t k = 0; k < inner; ++k) {
      const S& aik = a(i, k);
      if (ScalarTraits<S>::is_zero(aik)) continue;
      const S* brow = bf.data() + k * ncols;
      if constexpr (is_exact_v<S>) {
        for (std::size_t j = 0; j < ncols; ++j) {
          if (brow[j].is_zero()) continue;
          crow[j] += aik * brow[j];
        }
      } else {
        detail::cmul_add_row(reinterpret_cast<double*>(crow), reinterpret_cast<const double*>(brow), aik.real(),
                             aik.imag(), ncols);
      }
    }
  }
  return c;
}

template <Scalar S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  return mat_mul(a, b);
}

template <Scalar S>
Matrix<S> transpose(const Matrix<S>& a) {
  Matrix<S> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

template <Scalar S>
Matrix<S> conjugate(const Matrix<S>& a) {
  Matrix<S> c = a;
  for (auto& x : c.flat()) x = ScalarTraits<S>::conj(x);
  return c;
}

template <Scalar S>
Matrix<S> adjoint(const Matrix<S>& a) {
  Matrix<S> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = ScalarTraits<S>::conj(a(i, j));
  }
  return t;
}

template <Scalar S>
S trace(const Matrix<S>& a) {
  if (!a.is_square()) throw DimensionError("trace of a non-square matrix");
  S t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

// <a, b> = sum conj(a_i) b_i over the flattened entries.
template <Scalar S>
S inner(std::span<const S> a, std::span<const S> b) {
  S acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += ScalarTraits<S>::conj(a[i]) * b[i];
  return acc;
}

template <Scalar S>
double frobenius_norm(const Matrix<S>& a) {
  if constexpr (is_exact_v<S>) {
    mpq_class acc = 0;
    for (const auto& x : a.flat()) acc += x.norm2();
    return std::sqrt(acc.get_d());
  } else {
    double acc = 0.0;
    for (const auto& x : a.flat()) acc += std::norm(x);
    return std::sqrt(acc);
  }
}

template <Scalar S>
Matrix<S> power(const Matrix<S>& a, unsigned e) {
  if (!a.is_square()) throw DimensionError("power of a non-square matrix");
  Matrix<S> result = Matrix<S>::identity(a.rows());
  Matrix<S> base = a;
  bool first = true;
  while (e > 0) {
    if (e & 1u) {
      result = first ? base : mat_mul(result, base);
      first = false;
    }
    e >>= 1u;
    if (e > 0) base = mat_mul(base, base);
  }
  return result;
}

template <Scalar S>
bool is_zero_matrix(const Matrix<S>& a, double tol = 0.0) {
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return std::all_of(a.flat().begin(), a.flat().end(), [](const S& x) { return x.is_zero(); });
  } else {
    return frobenius_norm(a) <= tol;
  }
}

/// Smallest r with a^r = 0, if any. Float mode rescales a to unit Frobenius
/// norm first and treats ‖a^r‖_F <= tol as zero.
template <Scalar S>
std::optional<unsigned> nilpotency_index(const Matrix<S>& a, double tol = 1e-12) {
  if (!a.is_square()) throw DimensionError("nilpotency_index of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<S> base = a;
  if constexpr (!is_exact_v<S>) {
    double nrm = frobenius_norm(a);
    if (nrm == 0.0) return 1u;
    base *= Complex(1.0 / nrm, 0.0);
  }
  Matrix<S> p = base;
  for (unsigned r = 1; r <= n; ++r) {
    if (is_zero_matrix(p, tol)) return r;
    p = mat_mul(p, base);
  }
  return std::nullopt;
}

/// Block-diagonal direct sum.
template <Scalar S>
Matrix<S> direct_sum(std::span<const Matrix<S>> blocks) {
  std::size_t total = 0;
  for (const auto& b : blocks) {
    if (!b.is_square()) throw DimensionError("direct_sum expects square blocks");
    total += b.rows();
  }
  Matrix<S> out(total, total);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
    }
    off += b.rows();
  }
  return out;
}

namespace detail {

template <Scalar S>
double pivot_magnitude(const S& x) {
  return ScalarTraits<S>::abs(x);
}

}  // namespace detail

/// Determinant by Gaussian elimination with partial pivoting (largest
/// magnitude in float mode, first nonzero in exact mode).
template <Scalar S>
S determinant(Matrix<S> a) {
  if (!a.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  S det = ScalarTraits<S>::from_int(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    if constexpr (is_exact_v<S>) {
      for (std::size_t r = c; r < n; ++r) {
        if (!a(r, c).is_zero()) {
          piv = r;
          break;
        }
      }
    } else {
      double best = 0.0;
      for (std::size_t r = c; r < n; ++r) {
        double m = std::abs(a(r, c));
        if (m > best) {
          best = m;
          piv = r;
        }
      }
    }
    if (piv == n) return S{};
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    const S p = a(c, c);
    det *= p;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (ScalarTraits<S>::is_zero(a(r, c))) continue;
      const S f = a(r, c) / p;
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Gauss-Jordan inverse. Throws DimensionError on a singular input (exact
/// zero pivot, or float pivot below 1e-14 relative to the largest entry).
template <Scalar S>
Matrix<S> inverse(Matrix<S> a) {
  if (!a.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<S> inv = Matrix<S>::identity(n);
  double scale = 0.0;
  if constexpr (!is_exact_v<S>) {
    for (const auto& x : a.flat()) scale = std::max(scale, std::abs(x));
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    double best = 0.0;
    for (std::size_t r = c; r < n; ++r) {
      if constexpr (is_exact_v<S>) {
        if (!a(r, c).is_zero()) {
          piv = r;
          break;
        }
      } else {
        double m = std::abs(a(r, c));
        if (m > best) {
          best = m;
          piv = r;
        }
      }
    }
    if (piv == n || (!is_exact_v<S> && best <= 1e-14 * scale)) throw DimensionError("inverse of a singular matrix");
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    }
    const S p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || ScalarTraits<S>::is_zero(a(r, c))) continue;
      const S f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Float copy of an exact matrix.
inline FloatMatrix to_float(const ExactMatrix& a) {
  FloatMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out.flat()[i] = a.flat()[i].to_complex();
  return out;
}

inline FloatMatrix to_float(const FloatMatrix& a) { return a; }

/// Multiply by a real factor. Exact mode only accepts factor 1 (no-op) because
/// rescaling there would leave the rationals.
template <Scalar S>
Matrix<S> scaled(const Matrix<S>& a, double factor) {
  if constexpr (is_exact_v<S>) {
    if (factor != 1.0) throw ModeError("real rescaling is float-only");
    return a;
  } else {
    return a * Complex(factor, 0.0);
  }
}

/// Common factor c making max ‖c·M‖_F = 1 over the given matrices. Returns 1
/// when all are zero, and always 1 in exact mode.
template <Scalar S>
double prescale_factor(std::span<const Matrix<S>* const> mats) {
  if constexpr (is_exact_v<S>) {
    (void)mats;
    return 1.0;
  } else {
    double mx = 0.0;
    for (const auto* m : mats) mx = std::max(mx, frobenius_norm(*m));
    return mx > 0.0 ? 1.0 / mx : 1.0;
  }
}

template <Scalar S>
double distance(const Matrix<S>& a, const Matrix<S>& b) {
  return frobenius_norm(a - b);
}

template <Scalar S>
void require_square(const Matrix<S>& a, const char* what) {
  if (!a.is_square() || a.rows() == 0) throw DimensionError(std::string(what) + ": expected a nonempty square matrix");
}

template <Scalar S>
void require_same_size(const Matrix<S>& a, const Matrix<S>& b, const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    throw DimensionError(std::string(what) + ": size mismatch " + std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()));
  }
}

}  // namespace unieq
