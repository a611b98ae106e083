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

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "unieq/brute.hpp"
#include "unieq/closure.hpp"
#include "unieq/fastpath.hpp"
#include "unieq/gadgets.hpp"
#include "unieq/verdict.hpp"

namespace unieq {

enum class EngineChoice { Auto, Brute, Closure };

// How simultaneous similarity of several pairs is decided: one multi-letter
// closure over all pairs, or similarity of the block gadgets built from them.
enum class SimilarityRoute { Direct, Gadget };

// Congruence through the three-pair reduction, or similarity of the 4n×4n
// K gadgets.
enum class CongruenceRoute { Triple, KGadget };

struct DecideOptions {
  EngineChoice engine = EngineChoice::Auto;
  double tol = 1e-8;
  double budget = 1e7;
  unsigned threads = 1;
  SimilarityRoute similarity_route = SimilarityRoute::Direct;
  CongruenceRoute congruence_route = CongruenceRoute::Triple;
  std::optional<std::uint32_t> brute_max_length;  // default: floor of the length bound
  bool allow_shortcut = true;
};

namespace detail {

using Clock = std::chrono::steady_clock;

template <Scalar S>
double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <Scalar S>
void stamp(Verdict<S>& v, double prescale, double tol, Clock::time_point t0, const std::string& route) {
  v.prescale *= prescale;
  if constexpr (is_exact_v<S>) {
    v.tolerance.reset();
  } else {
    v.tolerance = tol;
  }
  v.elapsed_ms = elapsed_ms<S>(t0);
  v.route = v.route.empty() ? route : route + "/" + v.route;
}

// Inputs already rescaled.
template <Scalar S>
Verdict<S> similar_scaled(const Matrix<S>& X, const Matrix<S>& Y, const DecideOptions& o) {
  const std::size_t m = X.rows();
  switch (o.engine) {
    case EngineChoice::Auto:
      if (m == 2 || m == 3) return fastpath_similar(X, Y, o.tol);
      return algebra_closure(X, Y, o.tol);
    case EngineChoice::Closure:
      return algebra_closure(X, Y, o.tol);
    case EngineChoice::Brute: {
      const std::uint32_t len =
          o.brute_max_length ? *o.brute_max_length : (m < 2 ? 1u : static_cast<std::uint32_t>(pappacena_length(int(m))));
      return specht_brute(X, Y, len, nilpotent_exponent_cap(X, Y), o.tol, o.budget, o.threads);
    }
  }
  throw InputError("unknown engine");
}

template <Scalar S>
Verdict<S> simultaneous_scaled(const std::vector<MatrixPair<S>>& pairs, const DecideOptions& o) {
  if (pairs.empty()) throw InputError("no pairs to compare");
  if (pairs.size() == 1) return similar_scaled(pairs[0].A, pairs[0].B, o);
  const bool gadget = o.similarity_route == SimilarityRoute::Gadget || o.engine == EngineChoice::Brute;
  if (!gadget) {
    Verdict<S> v = algebra_closure(star_letters<S>(pairs), o.tol);
    v.route = "multi-letter";
    return v;
  }
  auto [ga, gb] = build_similarity_gadget(pairs, pairs[0].A.rows());
  Verdict<S> v = similar_scaled(ga.M, gb.M, o);
  v.route = "similarity-gadget";
  return v;
}

template <Scalar S>
Verdict<S> congruent_scaled(const Matrix<S>& A, const Matrix<S>& B, const DecideOptions& o) {
  if (o.congruence_route == CongruenceRoute::KGadget) {
    const Matrix<S>* both[] = {&A, &B};
    const double c = prescale_factor<S>(both);
    const bool prime = o.allow_shortcut && (shortcut_nonsingular(A, c) || shortcut_nonsingular(B, c));
    const Matrix<S> KA = prime ? build_congruence_K_prime(A) : build_congruence_K(A);
    const Matrix<S> KB = prime ? build_congruence_K_prime(B) : build_congruence_K(B);
    Verdict<S> v = similar_scaled(KA, KB, o);
    v.route = std::string(prime ? "K-prime" : "K") + (v.route.empty() ? "" : "/" + v.route);
    return v;
  }
  Verdict<S> v = simultaneous_scaled(congruence_triple(A, B, o.allow_shortcut), o);
  v.route = "triple" + (v.route.empty() ? std::string() : "/" + v.route);
  return v;
}

template <Scalar S>
std::vector<const Matrix<S>*> instance_matrices(const ProblemInstance<S>& inst) {
  std::vector<const Matrix<S>*> out;
  for (const auto& set : inst.sets) {
    for (const auto& p : set) {
      out.push_back(&p.A);
      out.push_back(&p.B);
    }
  }
  return out;
}

template <Scalar S>
ProblemInstance<S> rescaled(const ProblemInstance<S>& inst, double c) {
  ProblemInstance<S> out = inst;
  for (auto& set : out.sets) {
    for (auto& p : set) {
      p.A = scaled(p.A, c);
      p.B = scaled(p.B, c);
    }
  }
  return out;
}

}  // namespace detail

/// Common real factor bringing the largest Frobenius norm in the instance to
/// 1 (always 1 in exact mode).
template <Scalar S>
double instance_prescale(const ProblemInstance<S>& inst) {
  const auto mats = detail::instance_matrices(inst);
  return prescale_factor<S>(mats);
}

/// A = UBU* for some unitary U?
/// auto: fixed word lists for 2×2 and 3×3, the closure engine otherwise.
template <Scalar S>
Verdict<S> unitarily_similar(const Matrix<S>& A, const Matrix<S>& B, const DecideOptions& o = {}) {
  const auto t0 = detail::Clock::now();
  require_same_size(A, B, "unitarily_similar");
  const Matrix<S>* both[] = {&A, &B};
  const double c = prescale_factor<S>(both);
  Verdict<S> v = detail::similar_scaled(scaled(A, c), scaled(B, c), o);
  detail::stamp(v, c, o.tol, t0, "similar");
  return v;
}

/// One U with A_j = U B_j U* for all j?
template <Scalar S>
Verdict<S> simultaneously_unitarily_similar(const std::vector<MatrixPair<S>>& pairs, const DecideOptions& o = {}) {
  const auto t0 = detail::Clock::now();
  if (pairs.empty()) throw InputError("simultaneously_unitarily_similar: empty pair list");
  ProblemInstance<S> inst;
  inst.n = pairs[0].A.rows();
  inst.sets[0] = pairs;
  inst.validate();
  const double c = instance_prescale(inst);
  Verdict<S> v = detail::simultaneous_scaled(detail::rescaled(inst, c).sets[0], o);
  detail::stamp(v, c, o.tol, t0, "simultaneous");
  return v;
}

template <Scalar S>
struct ScreenResult {
  bool passed = true;  // no violation found; never a proof of equivalence
  std::optional<TraceCertificate<S>> certificate;
  std::size_t words_checked = 0;
};

/// Necessary-condition screen: traces of all multi-letter words in
/// (A_1, A_1*, ..., A_p, A_p*) versus the B side, up to max_length.
template <Scalar S>
ScreenResult<S> screen_multi_letter(const std::vector<MatrixPair<S>>& pairs, std::uint32_t max_length,
                                    double tol = 1e-8, double budget = 1e7) {
  if (pairs.empty()) throw InputError("screen_multi_letter: empty pair list");
  ProblemInstance<S> inst;
  inst.n = pairs[0].A.rows();
  inst.sets[0] = pairs;
  inst.validate();
  const auto sc = detail::rescaled(inst, instance_prescale(inst));
  BruteOptions bo;
  bo.max_length = max_length;
  bo.tol = tol;
  bo.budget = budget;
  Verdict<S> v = brute_trace_compare(star_letters<S>(sc.sets[0]), bo);
  ScreenResult<S> r;
  r.words_checked = v.words_checked;
  if (!v.equivalent()) {
    r.passed = false;
    r.certificate = std::get<TraceCertificate<S>>(*v.certificate);
  }
  return r;
}

/// A = U B Uᵀ for some unitary U?
template <Scalar S>
Verdict<S> unitarily_congruent(const Matrix<S>& A, const Matrix<S>& B, const DecideOptions& o = {}) {
  const auto t0 = detail::Clock::now();
  require_same_size(A, B, "unitarily_congruent");
  const Matrix<S>* both[] = {&A, &B};
  const double c = prescale_factor<S>(both);
  Verdict<S> v = detail::congruent_scaled(scaled(A, c), scaled(B, c), o);
  detail::stamp(v, c, o.tol, t0, "congruent");
  return v;
}

/// The letters the default route compares for an instance: the rescaled S1
/// pairs when only S1 is present, otherwise the congruence triple of the
/// parity-placed gadgets. Certificates from solve_general with default
/// routes are words over these letters.
template <Scalar S>
LetterSet<S> general_letters(const ProblemInstance<S>& inst, bool allow_shortcut = true) {
  inst.validate();
  const auto sc = detail::rescaled(inst, instance_prescale(inst));
  if (sc.only_similarity()) return star_letters<S>(sc.sets[0]);
  auto [ga, gb] = build_general_gadget(sc);
  return star_letters<S>(congruence_triple(ga.M, gb.M, allow_shortcut));
}

/// Is there one unitary U with A = UBU* on S1, A = UBUᵀ on S2, A = ŪBU* on S3
/// and A = ŪBUᵀ on S4?
template <Scalar S>
Verdict<S> solve_general(const ProblemInstance<S>& inst, const DecideOptions& o = {}) {
  const auto t0 = detail::Clock::now();
  inst.validate();
  const double c = instance_prescale(inst);
  const auto sc = detail::rescaled(inst, c);
  Verdict<S> v;
  if (sc.only_similarity()) {
    v = detail::simultaneous_scaled(sc.sets[0], o);
    v.route = "S1-only" + (v.route.empty() ? std::string() : "/" + v.route);
  } else {
    auto [ga, gb] = build_general_gadget(sc);
    v = detail::congruent_scaled(ga.M, gb.M, o);
    v.route = "general-gadget/" + v.route;
  }
  detail::stamp(v, c, o.tol, t0, "general");
  return v;
}

struct WitnessReport {
  bool valid = false;
  double unitarity_residual = 0.0;
  double max_relation_residual = 0.0;
};

/// Checks U against every relation of the instance using Frobenius
/// residuals: ‖UU* − I‖ <= tol·(1 + √n) and ‖A − f(U,B)‖ <= tol·(1 + ‖A‖).
/// Exact mode requires exact equality.
template <Scalar S>
WitnessReport witness_report(const ProblemInstance<S>& inst, const Matrix<S>& U, double tol = 1e-10) {
  inst.validate();
  if (U.rows() != inst.n || U.cols() != inst.n) throw DimensionError("witness size differs from instance n");
  const std::size_t n = inst.n;
  const Matrix<S> Ustar = adjoint(U), Ut = transpose(U), Ubar = conjugate(U);
  WitnessReport r;
  const Matrix<S> gram = mat_mul(U, Ustar) - Matrix<S>::identity(n);
  r.unitarity_residual = frobenius_norm(gram);
  bool ok = is_exact_v<S> ? is_zero_matrix(gram) : r.unitarity_residual <= tol * (1.0 + std::sqrt(double(n)));
  for (std::size_t c = 0; c < 4; ++c) {
    const Matrix<S>& left = (c == 0 || c == 1) ? U : Ubar;
    const Matrix<S>& right = (c == 0 || c == 2) ? Ustar : Ut;
    for (const auto& p : inst.sets[c]) {
      const Matrix<S> d = p.A - mat_mul(mat_mul(left, p.B), right);
      const double res = frobenius_norm(d);
      r.max_relation_residual = std::max(r.max_relation_residual, res);
      ok = ok && (is_exact_v<S> ? is_zero_matrix(d) : res <= tol * (1.0 + frobenius_norm(p.A)));
    }
  }
  r.valid = ok;
  return r;
}

template <Scalar S>
bool verify_witness(const ProblemInstance<S>& inst, const Matrix<S>& U, double tol = 1e-10) {
  return witness_report(inst, U, tol).valid;
}

}  // namespace unieq
