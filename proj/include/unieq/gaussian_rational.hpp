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

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <string>
#include <string_view>

#include "unieq/errors.hpp"

namespace unieq {

/// Complex number with arbitrary-precision rational real and imaginary parts.
///
/// Both parts are kept in lowest terms with a positive denominator; gmpxx
/// arithmetic preserves that, and every entry point that builds a value from
/// raw parts canonicalizes.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  /// Parses "p/q", "p" or "-p/q". Decimal points are rejected.
  static mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw InputError("empty rational string");
    auto slash = s.find('/');
    auto check_int = [&](std::string_view part) {
      std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
      if (i == part.size()) throw InputError("malformed rational '" + s + "'");
      for (; i < part.size(); ++i) {
        if (part[i] < '0' || part[i] > '9') throw InputError("malformed rational '" + s + "'");
      }
    };
    if (slash == std::string::npos) {
      check_int(s);
    } else {
      check_int(std::string_view(s).substr(0, slash));
      auto den = std::string_view(s).substr(slash + 1);
      if (!den.empty() && (den[0] == '-' || den[0] == '+')) {
        throw InputError("malformed rational '" + s + "'");
      }
      check_int(den);
    }
    if (s[0] == '+') s.erase(0, 1);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw InputError("malformed rational '" + std::string(text) + "'");
    if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
  }

  static std::string format_rational(const mpq_class& q) { return q.get_str(10); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  GaussianRational conj() const { return GaussianRational(re_, -im_, Raw{}); }
  /// |z|^2, exact.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    mpq_class d = o.norm2();
    if (sgn(d) == 0) throw std::domain_error("division by zero Gaussian rational");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return GaussianRational(-a.re_, -a.im_, Raw{}); }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << "(" << z.re_.get_str() << "," << z.im_.get_str() << ")";
  }

 private:
  struct Raw {};
  // Parts already canonical.
  GaussianRational(mpq_class re, mpq_class im, Raw) : re_(std::move(re)), im_(std::move(im)) {}

  mpq_class re_{0};
  mpq_class im_{0};
};

}  // namespace unieq
