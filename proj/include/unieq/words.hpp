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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "unieq/errors.hpp"
#include "unieq/matrix.hpp"

namespace unieq {

using Letter = std::uint32_t;

/// A word in noncommuting letters, stored in canonical run-length form:
/// adjacent runs carry distinct letters and every exponent is positive.
///
/// For an even alphabet, letters pair up as (2j, 2j+1) = (X_j, X_j*); the
/// two-letter alphabet is written s, t.
class Word {
 public:
  struct Run {
    Letter letter;
    std::uint32_t exponent;
    friend bool operator==(const Run&, const Run&) = default;
  };

  Word() = default;
  explicit Word(std::uint32_t alphabet_size) : alphabet_(alphabet_size) {
    if (alphabet_size == 0) throw InputError("alphabet size must be positive");
  }

  static Word from_letters(std::span<const Letter> letters, std::uint32_t alphabet_size) {
    Word w(alphabet_size);
    for (Letter l : letters) w.append(l, 1);
    return w;
  }

  static Word from_runs(std::span<const Run> runs, std::uint32_t alphabet_size) {
    Word w(alphabet_size);
    for (const auto& r : runs) w.append(r.letter, r.exponent);
    return w;
  }

  /// Appends letter^exponent, merging with the last run; exponent 0 is a no-op.
  void append(Letter letter, std::uint32_t exponent) {
    if (letter >= alphabet_) {
      throw InputError("letter " + std::to_string(letter) + " outside alphabet of size " + std::to_string(alphabet_));
    }
    if (exponent == 0) return;
    if (!runs_.empty() && runs_.back().letter == letter) {
      runs_.back().exponent += exponent;
    } else {
      runs_.push_back({letter, exponent});
    }
  }

  std::uint32_t alphabet_size() const { return alphabet_; }
  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }

  std::size_t length() const {
    std::size_t n = 0;
    for (const auto& r : runs_) n += r.exponent;
    return n;
  }

  std::uint32_t max_exponent() const {
    std::uint32_t m = 0;
    for (const auto& r : runs_) m = std::max(m, r.exponent);
    return m;
  }

  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    for (const auto& r : runs_) out.insert(out.end(), r.exponent, r.letter);
    return out;
  }

  /// Cyclic left rotation by k letters.
  Word rotated(std::size_t k) const {
    auto l = letters();
    if (l.empty()) return *this;
    std::rotate(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(k % l.size()), l.end());
    return from_letters(l, alphabet_);
  }

  /// w* : reverse the word and swap each letter with its starred partner.
  /// Evaluated at (X_0, X_0*, ...), tr(w*) = conj(tr w).
  Word star_reversed() const {
    if (alphabet_ % 2 != 0) throw InputError("star reversal needs an even alphabet");
    auto l = letters();
    std::reverse(l.begin(), l.end());
    for (auto& x : l) x ^= 1u;
    return from_letters(l, alphabet_);
  }

  static std::string letter_name(Letter l, std::uint32_t alphabet) {
    if (alphabet == 2) return l == 0 ? "s" : "t";
    return "x" + std::to_string(l / 2) + (l % 2 ? "*" : "");
  }

  /// "s^2 t s t^3" for two letters, "x0 x0*^2 x1" otherwise; "1" for the
  /// empty word.
  std::string str() const {
    if (runs_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      if (i) out += ' ';
      out += letter_name(runs_[i].letter, alphabet_);
      if (runs_[i].exponent > 1) out += "^" + std::to_string(runs_[i].exponent);
    }
    return out;
  }

  static Word parse(const std::string& text, std::uint32_t alphabet_size) {
    Word w(alphabet_size);
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
      if (tok == "1" && w.empty()) continue;
      std::uint32_t exp = 1;
      auto caret = tok.find('^');
      std::string name = tok.substr(0, caret);
      if (caret != std::string::npos) {
        const std::string e = tok.substr(caret + 1);
        if (e.empty() || !std::all_of(e.begin(), e.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          throw InputError("bad exponent in word token '" + tok + "'");
        }
        exp = static_cast<std::uint32_t>(std::stoul(e));
      }
      std::optional<Letter> letter;
      for (Letter l = 0; l < alphabet_size; ++l) {
        if (letter_name(l, alphabet_size) == name) letter = l;
      }
      if (!letter) throw InputError("unknown letter '" + name + "' in word '" + text + "'");
      w.append(*letter, exp);
    }
    return w;
  }

  friend bool operator==(const Word& a, const Word& b) { return a.alphabet_ == b.alphabet_ && a.runs_ == b.runs_; }

  /// Length-lexicographic order: shorter first, then letter by letter.
  friend bool operator<(const Word& a, const Word& b) {
    const auto la = a.length(), lb = b.length();
    if (la != lb) return la < lb;
    const auto xa = a.letters(), xb = b.letters();
    return std::lexicographical_compare(xa.begin(), xa.end(), xb.begin(), xb.end());
  }

 private:
  std::uint32_t alphabet_ = 2;
  std::vector<Run> runs_;
};

/// Word-length cutoff making the trace criterion finite for m×m matrices:
/// m·sqrt(2m²/(m−1) + 1/4) + m/2 − 2.
inline double pappacena_bound(int m) {
  if (m < 2) throw InputError("pappacena_bound requires m >= 2, got " + std::to_string(m));
  const double md = m;
  return md * std::sqrt(2.0 * md * md / (md - 1.0) + 0.25) + md / 2.0 - 2.0;
}

inline int pappacena_length(int m) { return static_cast<int>(std::floor(pappacena_bound(m))); }

enum class Dedup { None, Cyclic, CyclicStar };

struct EnumerationOptions {
  std::uint32_t alphabet_size = 2;
  std::uint32_t max_length = 0;
  std::optional<std::uint32_t> max_exponent;  // nullopt: no cap
  Dedup dedup = Dedup::None;
  std::uint32_t min_length = 1;
};

namespace detail {

// Least rotation of a letter string (O(L^2); only run on necklaces).
inline std::vector<Letter> least_rotation(const std::vector<Letter>& s) {
  std::vector<Letter> best = s;
  std::vector<Letter> cur = s;
  for (std::size_t k = 1; k < s.size(); ++k) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

inline bool passes_star_filter(const std::vector<Letter>& a) {
  std::vector<Letter> r(a.rbegin(), a.rend());
  for (auto& x : r) x ^= 1u;
  return !(least_rotation(r) < a);
}

}  // namespace detail

/// Depth-first walker over the words of one exact length, in lexicographic
/// order. The visitor sees every prefix extension (push/pop) so it can keep
/// prefix products, and emit() for each word that survives deduplication;
/// emit returning false stops the walk.
///
/// With cyclic dedup the walk is the FKM pre-necklace recursion, which visits
/// only prefixes of least rotations. Runs longer than the exponent cap prune
/// the subtree.
template <typename Visitor>
class WordWalker {
 public:
  WordWalker(const EnumerationOptions& opts, std::uint32_t length, Visitor& v)
      : opts_(opts), n_(length), v_(v), a_(length + 1, 0), run_(length + 1, 0) {
    if (opts.dedup == Dedup::CyclicStar && opts.alphabet_size % 2 != 0) {
      throw InputError("star-reversal dedup needs an even alphabet");
    }
  }

  /// Walks only words whose first letter is `first` (used to split work).
  bool run(std::optional<Letter> first = std::nullopt) {
    first_ = first;
    if (n_ == 0) return true;
    if (opts_.dedup == Dedup::None) return plain(1);
    return fkm(1, 1);
  }

 private:
  bool allowed(std::uint32_t t, Letter c) {
    if (t == 1) {
      if (first_ && *first_ != c) return false;
      run_[1] = 1;
    } else {
      run_[t] = (a_[t - 1] == c) ? run_[t - 1] + 1 : 1;
    }
    return !opts_.max_exponent || run_[t] <= *opts_.max_exponent;
  }

  bool step(std::uint32_t t, Letter c, std::uint32_t p, bool necklace_walk) {
    if (!allowed(t, c)) return true;
    a_[t] = c;
    v_.push(c);
    bool keep = necklace_walk ? fkm(t + 1, p) : plain(t + 1);
    v_.pop();
    return keep;
  }

  bool plain(std::uint32_t t) {
    if (t > n_) return emit();
    for (Letter c = 0; c < opts_.alphabet_size; ++c) {
      if (!step(t, c, 0, false)) return false;
    }
    return true;
  }

  bool fkm(std::uint32_t t, std::uint32_t p) {
    if (t > n_) {
      if (n_ % p != 0) return true;
      if (opts_.dedup == Dedup::CyclicStar) {
        std::vector<Letter> w(a_.begin() + 1, a_.end());
        if (!detail::passes_star_filter(w)) return true;
      }
      return emit();
    }
    const Letter base = (t == 1) ? 0 : a_[t - p];
    if (!step(t, base, p, true)) return false;
    for (Letter c = base + 1; c < opts_.alphabet_size; ++c) {
      if (!step(t, c, t, true)) return false;
    }
    return true;
  }

  bool emit() {
    std::span<const Letter> w(a_.data() + 1, n_);
    return v_.emit(w);
  }

  const EnumerationOptions& opts_;
  std::uint32_t n_;
  Visitor& v_;
  std::vector<Letter> a_;
  std::vector<std::uint32_t> run_;
  std::optional<Letter> first_;
};

/// Streams every word of length min_length..max_length in length-lex order.
/// fn(const Word&) returns false to stop early.
template <typename Fn>
void for_each_word(const EnumerationOptions& opts, Fn&& fn) {
  if (opts.dedup == Dedup::CyclicStar && opts.alphabet_size % 2 != 0) {
    throw InputError("star-reversal dedup needs an even alphabet");
  }
  struct V {
    Fn& fn;
    std::uint32_t alphabet;
    void push(Letter) {}
    void pop() {}
    bool emit(std::span<const Letter> w) { return fn(Word::from_letters(w, alphabet)); }
  } v{fn, opts.alphabet_size};
  for (std::uint32_t len = std::max<std::uint32_t>(1, opts.min_length); len <= opts.max_length; ++len) {
    WordWalker<V> walker(opts, len, v);
    if (!walker.run()) return;
  }
}

inline std::vector<Word> enumerate_words(std::uint32_t alphabet_size, std::uint32_t max_length,
                                         std::optional<std::uint32_t> max_exponent = std::nullopt,
                                         Dedup dedup = Dedup::None) {
  std::vector<Word> out;
  EnumerationOptions opts{alphabet_size, max_length, max_exponent, dedup};
  for_each_word(opts, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

/// Number of letter strings of each length 1..max_length whose runs respect
/// the cap, summed and divided by the length (a necklace-count estimate).
/// Used as the brute-force budget estimate.
inline double estimate_word_count(std::uint32_t alphabet_size, std::uint32_t max_length,
                                  std::optional<std::uint32_t> max_exponent, Dedup dedup) {
  const std::uint32_t cap = max_exponent.value_or(max_length);
  // ways[r] = strings of the current length ending in a run of length r (1-based)
  std::vector<double> ways(cap + 2, 0.0);
  double total = 0.0;
  for (std::uint32_t len = 1; len <= max_length; ++len) {
    std::vector<double> next(cap + 2, 0.0);
    if (len == 1) {
      next[1] = alphabet_size;
    } else {
      double all = 0.0;
      for (std::uint32_t r = 1; r <= cap; ++r) all += ways[r];
      next[1] = all * (alphabet_size - 1.0);
      for (std::uint32_t r = 2; r <= cap; ++r) next[r] = ways[r - 1];
    }
    ways = std::move(next);
    double count = 0.0;
    for (std::uint32_t r = 1; r <= cap; ++r) count += ways[r];
    if (dedup == Dedup::Cyclic) count /= len;
    if (dedup == Dedup::CyclicStar) count /= 2.0 * len;
    total += count;
  }
  return total;
}

template <Scalar S>
void require_letters(std::span<const Matrix<S>> letters, std::uint32_t alphabet_size, const char* what) {
  if (letters.size() != alphabet_size) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(alphabet_size) + " letters, got " +
                         std::to_string(letters.size()));
  }
  for (const auto& m : letters) {
    require_square(m, what);
    if (m.rows() != letters[0].rows()) throw DimensionError(std::string(what) + ": letters differ in size");
  }
}

/// Evaluates w at the given letters, using repeated squaring inside runs.
/// The empty word evaluates to the identity.
template <Scalar S>
Matrix<S> eval_word(const Word& w, std::span<const Matrix<S>> letters) {
  require_letters(letters, w.alphabet_size(), "eval_word");
  const std::size_t n = letters[0].rows();
  std::optional<Matrix<S>> acc;
  for (const auto& r : w.runs()) {
    Matrix<S> p = power(letters[r.letter], r.exponent);
    acc = acc ? mat_mul(*acc, p) : std::move(p);
  }
  return acc ? std::move(*acc) : Matrix<S>::identity(n);
}

template <Scalar S>
Matrix<S> eval_word(const Word& w, std::initializer_list<Matrix<S>> letters) {
  std::vector<Matrix<S>> v(letters);
  return eval_word<S>(w, std::span<const Matrix<S>>(v));
}

/// Traces tr W(X, Y) for all words up to max_length (letters s -> X, t -> Y),
/// in length-lex order. Call with Y = X* for the unitary-similarity table.
template <Scalar S>
std::vector<std::pair<Word, S>> word_trace_spectrum(const Matrix<S>& X, const Matrix<S>& Y, std::uint32_t max_length,
                                                    std::optional<std::uint32_t> max_exponent = std::nullopt,
                                                    Dedup dedup = Dedup::None) {
  require_same_size(X, Y, "word_trace_spectrum");
  const std::vector<Matrix<S>> letters{X, Y};
  struct V {
    const std::vector<Matrix<S>>& letters;
    std::vector<Matrix<S>> stack;
    std::vector<std::pair<Word, S>>& out;
    void push(Letter l) { stack.push_back(stack.empty() ? letters[l] : mat_mul(stack.back(), letters[l])); }
    void pop() { stack.pop_back(); }
    bool emit(std::span<const Letter> w) {
      out.emplace_back(Word::from_letters(w, 2), trace(stack.back()));
      return true;
    }
  };
  std::vector<std::pair<Word, S>> out;
  V v{letters, {}, out};
  EnumerationOptions opts{2, max_length, max_exponent, dedup};
  for (std::uint32_t len = 1; len <= max_length; ++len) {
    WordWalker<V> walker(opts, len, v);
    walker.run();
  }
  return out;
}

}  // namespace unieq
