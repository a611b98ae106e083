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
#include <atomic>
#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "unieq/closure.hpp"
#include "unieq/verdict.hpp"
#include "unieq/words.hpp"

namespace unieq {

struct BruteOptions {
  std::uint32_t max_length = 0;
  std::optional<std::uint32_t> max_exponent;
  double tol = 1e-8;
  Dedup dedup = Dedup::CyclicStar;
  double budget = 1e7;  // ceiling on the estimated word count
  unsigned threads = 1;
};

namespace detail {

template <Scalar S>
struct TraceCompareVisitor {
  const LetterSet<S>& letters;
  double tol;
  std::vector<Matrix<S>> left_stack;
  std::vector<Matrix<S>> right_stack;
  std::optional<TraceCertificate<S>> failure;
  std::size_t checked = 0;
  // Stop once a word from an earlier first-letter shard has failed.
  const std::atomic<int>* best_shard = nullptr;
  int shard = 0;

  void push(Letter l) {
    left_stack.push_back(left_stack.empty() ? letters.left[l] : mat_mul(left_stack.back(), letters.left[l]));
    right_stack.push_back(right_stack.empty() ? letters.right[l] : mat_mul(right_stack.back(), letters.right[l]));
  }
  void pop() {
    left_stack.pop_back();
    right_stack.pop_back();
  }
  bool emit(std::span<const Letter> w) {
    if (best_shard && best_shard->load(std::memory_order_relaxed) < shard) return false;
    ++checked;
    S tl = trace(left_stack.back());
    S tr = trace(right_stack.back());
    if (!scalars_agree(tl, tr, tol)) {
      failure = TraceCertificate<S>{Word::from_letters(w, letters.alphabet_size()), std::move(tl), std::move(tr), 1.0};
      return false;
    }
    return true;
  }
};

}  // namespace detail

/// Compares tr w(left) with tr w(right) over every word of length
/// 1..max_length (with the chosen dedup and exponent cap). The certificate is
/// the first failing word in length-lex stream order, independent of the
/// thread count: lengths run in sequence, and within a length each
/// first-letter shard reports its own first failure and the lowest shard wins.
template <Scalar S>
Verdict<S> brute_trace_compare(const LetterSet<S>& letters, const BruteOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::require_letter_set(letters, "brute_trace_compare");
  const std::uint32_t alphabet = letters.alphabet_size();
  const double estimate = estimate_word_count(alphabet, opts.max_length, opts.max_exponent, opts.dedup);
  if (estimate > opts.budget) {
    throw BudgetExceeded("brute engine: about " + std::to_string(static_cast<long long>(estimate)) +
                         " words exceed the budget of " + std::to_string(static_cast<long long>(opts.budget)));
  }
  EnumerationOptions eo{alphabet, opts.max_length, opts.max_exponent, opts.dedup};
  std::size_t checked = 0;
  std::optional<TraceCertificate<S>> failure;
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, alphabet));

  for (std::uint32_t len = 1; len <= opts.max_length && !failure; ++len) {
    if (threads == 1) {
      detail::TraceCompareVisitor<S> v{letters, opts.tol, {}, {}, std::nullopt, 0};
      WordWalker<detail::TraceCompareVisitor<S>> walker(eo, len, v);
      walker.run();
      checked += v.checked;
      failure = std::move(v.failure);
      continue;
    }
    std::atomic<int> best{static_cast<int>(alphabet)};
    std::vector<detail::TraceCompareVisitor<S>> visitors;
    visitors.reserve(alphabet);
    for (std::uint32_t f = 0; f < alphabet; ++f) {
      visitors.push_back({letters, opts.tol, {}, {}, std::nullopt, 0, &best, static_cast<int>(f)});
    }
    std::atomic<std::uint32_t> next{0};
    auto work = [&] {
      for (std::uint32_t f = next++; f < alphabet; f = next++) {
        WordWalker<detail::TraceCompareVisitor<S>> walker(eo, len, visitors[f]);
        walker.run(f);
        if (visitors[f].failure) {
          int cur = best.load();
          while (static_cast<int>(f) < cur && !best.compare_exchange_weak(cur, static_cast<int>(f))) {
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    for (auto& v : visitors) {
      checked += v.checked;
      if (!failure && v.failure) failure = std::move(v.failure);
    }
  }

  Verdict<S> v = failure ? not_equivalent<S>(EngineKind::Brute, *failure) : Verdict<S>{};
  v.engine = EngineKind::Brute;
  v.words_checked = checked;
  if constexpr (!is_exact_v<S>) v.tolerance = opts.tol;
  v.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return v;
}

/// Trace comparison of W(X, X*) and W(Y, Y*) over two-letter words.
template <Scalar S>
Verdict<S> specht_brute(const Matrix<S>& X, const Matrix<S>& Y, std::uint32_t max_length,
                        std::optional<std::uint32_t> max_exponent = std::nullopt, double tol = 1e-8,
                        double budget = 1e7, unsigned threads = 1) {
  require_same_size(X, Y, "specht_brute");
  BruteOptions o;
  o.max_length = max_length;
  o.max_exponent = max_exponent;
  o.tol = tol;
  o.budget = budget;
  o.threads = threads;
  return brute_trace_compare(star_letters(X, Y), o);
}

/// Exponent cap implied by nilpotency: when both matrices are nilpotent, runs
/// of length >= the larger index vanish on both sides.
template <Scalar S>
std::optional<std::uint32_t> nilpotent_exponent_cap(const Matrix<S>& X, const Matrix<S>& Y) {
  auto rx = nilpotency_index(X);
  auto ry = nilpotency_index(Y);
  if (!rx || !ry) return std::nullopt;
  const unsigned r = std::max(*rx, *ry);
  if (r <= 1) return std::nullopt;  // zero matrices: nothing to gain
  return r - 1;
}

}  // namespace unieq
