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

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "test_util.hpp"

namespace unieq {
namespace {

using testing::random_float;

const FloatMatrix kJordan{{0.0, 1.0}, {0.0, 0.0}};

std::vector<Letter> letters_of(std::uint64_t bits, std::size_t len, Letter alphabet) {
  std::vector<Letter> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    out[len - 1 - i] = static_cast<Letter>(bits % alphabet);
    bits /= alphabet;
  }
  return out;
}

// Independent oracle: multiply letter by letter, no runs, no squaring.
FloatMatrix naive_eval(const std::vector<Letter>& s, const std::vector<FloatMatrix>& letters) {
  FloatMatrix acc = FloatMatrix::identity(letters[0].rows());
  for (Letter l : s) {
    FloatMatrix next(acc.rows(), acc.cols());
    for (std::size_t i = 0; i < acc.rows(); ++i)
      for (std::size_t j = 0; j < acc.cols(); ++j)
        for (std::size_t k = 0; k < acc.cols(); ++k) next(i, j) += acc(i, k) * letters[l](k, j);
    acc = next;
  }
  return acc;
}

TEST(Word, CanonicalRuns) {
  const Letter raw[] = {0, 0, 1, 0, 1, 1, 1};
  const Word w = Word::from_letters(raw, 2);
  EXPECT_EQ(w.str(), "s^2 t s t^3");
  EXPECT_EQ(w.length(), 7u);
  EXPECT_EQ(w.max_exponent(), 3u);
  EXPECT_EQ(w.runs().size(), 4u);
  EXPECT_EQ(Word::parse(w.str(), 2), w);
  EXPECT_EQ(Word::from_letters(w.letters(), 2), w);
  EXPECT_EQ(Word(2).str(), "1");
  EXPECT_EQ(Word::parse("s s t", 2).str(), "s^2 t");
  EXPECT_THROW(Word::parse("u", 2), InputError);
  EXPECT_THROW(Word::parse("s^x", 2), InputError);
  const Letter bad[] = {0, 4};
  EXPECT_THROW(Word::from_letters(bad, 4), InputError);
}

TEST(Word, MultiLetterNames) {
  const Word w = Word::parse("x0 x1* x1*", 4);
  EXPECT_EQ(w.str(), "x0 x1*^2");
  EXPECT_EQ(w.star_reversed().str(), "x1^2 x0*");
  EXPECT_THROW(Word::parse("x0", 3).star_reversed(), InputError);
}

TEST(Word, LengthLexOrder) {
  EXPECT_LT(Word::parse("t", 2), Word::parse("s s", 2));
  EXPECT_LT(Word::parse("s t", 2), Word::parse("t s", 2));
  EXPECT_FALSE(Word::parse("t s", 2) < Word::parse("t s", 2));
}

TEST(PappacenaBound, Values) {
  EXPECT_NEAR(pappacena_bound(8), 36.44, 0.01);
  EXPECT_NEAR(pappacena_bound(12), 65.69, 0.01);
  EXPECT_NEAR(pappacena_bound(16), 99.82, 0.01);
  EXPECT_EQ(pappacena_length(8), 36);
  EXPECT_EQ(pappacena_length(12), 65);
  // m=2: 2·sqrt(8.25) − 1
  EXPECT_NEAR(pappacena_bound(2), 2.0 * std::sqrt(8.25) - 1.0, 1e-12);
  EXPECT_THROW(pappacena_bound(1), InputError);
  EXPECT_THROW(pappacena_bound(0), InputError);
}

TEST(Enumerate, SmallCounts) {
  EXPECT_EQ(enumerate_words(2, 1).size(), 2u);
  const auto w2 = enumerate_words(2, 2);
  ASSERT_EQ(w2.size(), 6u);
  std::vector<std::string> names;
  for (const auto& w : w2) names.push_back(w.str());
  EXPECT_EQ(names, (std::vector<std::string>{"s", "t", "s^2", "s t", "t s", "t^2"}));
  EXPECT_TRUE(enumerate_words(2, 0).empty());
}

TEST(Enumerate, ExponentCapAtLengthFour) {
  EnumerationOptions o{2, 4, 3u, Dedup::None, 4};
  std::size_t count = 0;
  for_each_word(o, [&](const Word& w) {
    EXPECT_EQ(w.length(), 4u);
    EXPECT_LE(w.max_exponent(), 3u);
    ++count;
    return true;
  });
  EXPECT_EQ(count, 14u);
}

TEST(Enumerate, CountWithoutDedupIsGeometric) {
  for (std::uint32_t L = 1; L <= 10; ++L) {
    EXPECT_EQ(enumerate_words(2, L).size(), (std::size_t{1} << (L + 1)) - 2) << "L=" << L;
  }
}

TEST(Enumerate, CappedCountMatchesStringFilter) {
  for (std::uint32_t cap = 1; cap <= 3; ++cap) {
    for (std::uint32_t L = 1; L <= 9; ++L) {
      std::size_t expect = 0;
      for (std::uint32_t len = 1; len <= L; ++len) {
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b) {
          if (Word::from_letters(letters_of(b, len, 2), 2).max_exponent() <= cap) ++expect;
        }
      }
      EXPECT_EQ(enumerate_words(2, L, cap).size(), expect) << "cap=" << cap << " L=" << L;
      EXPECT_DOUBLE_EQ(estimate_word_count(2, L, cap, Dedup::None), static_cast<double>(expect));
    }
  }
}

TEST(Enumerate, CanonicalFormIsStable) {
  for (const auto& w : enumerate_words(4, 4, 2u)) {
    EXPECT_EQ(Word::from_letters(w.letters(), 4), w);
    for (std::size_t i = 1; i < w.runs().size(); ++i) EXPECT_NE(w.runs()[i].letter, w.runs()[i - 1].letter);
  }
}

TEST(Enumerate, CyclicDedupPartitionsEachLength) {
  for (Letter alphabet : {2u, 3u}) {
    for (std::size_t L = 1; L <= 7; ++L) {
      std::set<std::vector<Letter>> covered;
      std::size_t reps = 0;
      EnumerationOptions o{alphabet, static_cast<std::uint32_t>(L), std::nullopt, Dedup::Cyclic,
                           static_cast<std::uint32_t>(L)};
      for_each_word(o, [&](const Word& w) {
        ++reps;
        const auto s = w.letters();
        EXPECT_EQ(detail::least_rotation(s), s);
        for (std::size_t r = 0; r < L; ++r) {
          EXPECT_EQ(w.rotated(r).length(), L);
          covered.insert(w.rotated(r).letters());
        }
        return true;
      });
      std::size_t total = 1;
      for (std::size_t i = 0; i < L; ++i) total *= alphabet;
      EXPECT_EQ(covered.size(), total) << "alphabet=" << alphabet << " L=" << L;
      // Classes are disjoint: each representative is the least rotation of its class.
      std::set<std::vector<Letter>> distinct;
      for (const auto& s : covered) distinct.insert(detail::least_rotation(s));
      EXPECT_EQ(distinct.size(), reps);
    }
  }
}

TEST(Enumerate, StarDedupCoversEveryTraceClass) {
  for (std::size_t L = 1; L <= 8; ++L) {
    std::set<std::vector<Letter>> reps;
    EnumerationOptions o{2, static_cast<std::uint32_t>(L), std::nullopt, Dedup::CyclicStar,
                         static_cast<std::uint32_t>(L)};
    for_each_word(o, [&](const Word& w) {
      reps.insert(w.letters());
      return true;
    });
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << L); ++b) {
      const Word w = Word::from_letters(letters_of(b, L, 2), 2);
      const auto a = detail::least_rotation(w.letters());
      const auto c = detail::least_rotation(w.star_reversed().letters());
      EXPECT_TRUE(reps.count(a) || reps.count(c)) << w.str();
    }
  }
  EXPECT_THROW(enumerate_words(3, 3, std::nullopt, Dedup::CyclicStar), InputError);
}

TEST(EvalWord, Basics) {
  const FloatMatrix X = random_float(3, 21);
  EXPECT_EQ(eval_word<Complex>(Word(2), {X, adjoint(X)}), FloatMatrix::identity(3));
  const FloatMatrix expect{{1.0, 0.0}, {0.0, 0.0}};
  EXPECT_EQ(eval_word<Complex>(Word::parse("s t", 2), {kJordan, adjoint(kJordan)}), expect);
  EXPECT_THROW(eval_word<Complex>(Word::parse("s", 2), {X}), DimensionError);
  EXPECT_THROW(eval_word<Complex>(Word::parse("s", 2), {X, FloatMatrix::identity(2)}), DimensionError);
}

TEST(EvalWord, MatchesNaiveProduct) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const FloatMatrix A = random_gaussian(3, 3, rng) * Complex(0.5);
    const std::vector<FloatMatrix> letters{A, adjoint(A)};
    const std::size_t len = 1 + rng() % 8;
    const auto s = letters_of(rng(), len, 2);
    const Word w = Word::from_letters(s, 2);
    EXPECT_LE(distance(eval_word<Complex>(w, letters), naive_eval(s, letters)), 1e-12);
  }
}

TEST(EvalWord, TraceIsRotationInvariant) {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const FloatMatrix A = random_gaussian(3, 3, rng) * Complex(0.5);
    const std::vector<FloatMatrix> letters{A, adjoint(A)};
    const std::size_t len = 2 + rng() % 7;
    const Word w = Word::from_letters(letters_of(rng(), len, 2), 2);
    const std::size_t k = 1 + rng() % (len - 1);
    const Complex a = trace(eval_word<Complex>(w, letters));
    const Complex b = trace(eval_word<Complex>(w.rotated(k), letters));
    EXPECT_LE(std::abs(a - b), 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST(EvalWord, StarReversalConjugatesTrace) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const FloatMatrix A = random_gaussian(3, 3, rng) * Complex(0.5);
    const std::vector<FloatMatrix> letters{A, adjoint(A)};
    const Word w = Word::from_letters(letters_of(rng(), 1 + rng() % 8, 2), 2);
    const Complex a = trace(eval_word<Complex>(w, letters));
    const Complex b = trace(eval_word<Complex>(w.star_reversed(), letters));
    EXPECT_LE(std::abs(a - std::conj(b)), 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST(Spectrum, ZeroMatrices) {
  const auto table = word_trace_spectrum(FloatMatrix::zeros(3, 3), FloatMatrix::zeros(3, 3), 3);
  EXPECT_EQ(table.size(), 14u);
  for (const auto& [w, t] : table) {
    EXPECT_FALSE(w.empty());
    EXPECT_EQ(t, Complex(0.0));
  }
}

TEST(Spectrum, JordanBlockAgainstStringOracle) {
  const std::vector<FloatMatrix> letters{kJordan, adjoint(kJordan)};
  const auto table = word_trace_spectrum(kJordan, adjoint(kJordan), 4);
  ASSERT_EQ(table.size(), 30u);
  std::size_t idx = 0;
  for (std::size_t len = 1; len <= 4; ++len) {
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << len); ++b, ++idx) {
      const auto s = letters_of(b, len, 2);
      EXPECT_EQ(table[idx].first, Word::from_letters(s, 2));
      EXPECT_EQ(table[idx].second, trace(naive_eval(s, letters))) << table[idx].first.str();
    }
  }
  EXPECT_EQ(table[0].first.str(), "s");
  EXPECT_EQ(table[0].second, Complex(0.0));
  EXPECT_EQ(table[3].first.str(), "s t");
  EXPECT_EQ(table[3].second, Complex(1.0));
}

TEST(Spectrum, ExactModeMatchesFloat) {
  Rng rng(51);
  const ExactMatrix E = random_small_rational(2, rng);
  const auto exact = word_trace_spectrum(E, adjoint(E), 4, 3u);
  const auto flt = word_trace_spectrum(to_float(E), to_float(adjoint(E)), 4, 3u);
  ASSERT_EQ(exact.size(), flt.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    EXPECT_EQ(exact[i].first, flt[i].first);
    EXPECT_LE(std::abs(exact[i].second.to_complex() - flt[i].second), 1e-10 * (1.0 + std::abs(flt[i].second)));
  }
}

}  // namespace
}  // namespace unieq
