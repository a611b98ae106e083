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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"
#include "unieq/engines.hpp"
#include "unieq/gadgets.hpp"
#include "unieq/verdict.hpp"

namespace unieq::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars and matrices
// ---------------------------------------------------------------------------

inline json scalar_to_json(const Complex& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json scalar_to_json(const GaussianRational& z) {
  return json{{"re", GaussianRational::format_rational(z.re())}, {"im", GaussianRational::format_rational(z.im())}};
}

namespace detail {

inline void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
}

inline void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw InputError(path + (path.empty() ? "" : ".") + it.key() + ": unknown key");
  }
}

inline const json& require_key(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError((path.empty() ? key : path + "." + key) + ": missing key");
  return *it;
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

}  // namespace detail

template <Scalar S>
S scalar_from_json(const json& j, const std::string& path) {
  detail::require_object(j, path);
  detail::reject_unknown(j, {"re", "im"}, path);
  const json& re = detail::require_key(j, "re", path);
  const json& im = detail::require_key(j, "im", path);
  if constexpr (is_exact_v<S>) {
    for (const auto* part : {&re, &im}) {
      if (!part->is_string()) {
        throw InputError(detail::join(path, part == &re ? "re" : "im") + ": exact mode requires a rational string");
      }
    }
    try {
      return GaussianRational(GaussianRational::parse_rational(re.get<std::string>()),
                              GaussianRational::parse_rational(im.get<std::string>()));
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
  } else {
    for (const auto* part : {&re, &im}) {
      if (!part->is_number()) {
        throw InputError(detail::join(path, part == &re ? "re" : "im") + ": float mode requires a number");
      }
    }
    return Complex(re.get<double>(), im.get<double>());
  }
}

template <Scalar S>
json matrix_to_json(const Matrix<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Parses an n×n matrix; expected_n = 0 accepts any square size.
template <Scalar S>
Matrix<S> matrix_from_json(const json& j, std::size_t expected_n, const std::string& path) {
  if (!j.is_array() || j.empty()) throw InputError(path + ": expected a nonempty array of rows");
  const std::size_t rows = j.size();
  if (expected_n != 0 && rows != expected_n) {
    throw InputError(path + ": has " + std::to_string(rows) + " rows, expected " + std::to_string(expected_n));
  }
  Matrix<S> m(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) throw InputError(rp + ": expected an array");
    if (j[i].size() != rows) {
      throw InputError(rp + ": has " + std::to_string(j[i].size()) + " entries, expected " + std::to_string(rows));
    }
    for (std::size_t c = 0; c < rows; ++c) m(i, c) = scalar_from_json<S>(j[i][c], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

using AnyInstance = std::variant<ProblemInstance<Complex>, ProblemInstance<GaussianRational>>;

inline Mode parse_mode(const json& doc, const std::string& path = "") {
  const json& m = detail::require_key(doc, "mode", path);
  if (m == "float") return Mode::Float;
  if (m == "exact") return Mode::Exact;
  throw InputError(detail::join(path, "mode") + ": must be \"float\" or \"exact\"");
}

inline std::size_t parse_n(const json& doc) {
  const json& n = detail::require_key(doc, "n", "");
  if (!n.is_number_integer() || n.get<long long>() <= 0) throw InputError("n: must be a positive integer");
  return n.get<std::size_t>();
}

template <Scalar S>
ProblemInstance<S> instance_from_json_as(const json& doc) {
  ProblemInstance<S> inst;
  inst.n = parse_n(doc);
  for (std::size_t c = 0; c < 4; ++c) {
    const std::string key = "S" + std::to_string(c + 1);
    auto it = doc.find(key);
    if (it == doc.end()) continue;
    if (!it->is_array()) throw InputError(key + ": expected an array of pairs");
    for (std::size_t p = 0; p < it->size(); ++p) {
      const std::string pp = key + "[" + std::to_string(p) + "]";
      const json& pr = (*it)[p];
      detail::require_object(pr, pp);
      detail::reject_unknown(pr, {"A", "B"}, pp);
      Matrix<S> A = matrix_from_json<S>(detail::require_key(pr, "A", pp), inst.n, pp + ".A");
      Matrix<S> B = matrix_from_json<S>(detail::require_key(pr, "B", pp), inst.n, pp + ".B");
      inst.sets[c].push_back({std::move(A), std::move(B)});
    }
  }
  if (inst.total_pairs() == 0) throw InputError("S1..S4: instance has no pairs");
  return inst;
}

inline AnyInstance instance_from_json(const json& doc) {
  detail::require_object(doc, "<root>");
  detail::reject_unknown(doc, {"mode", "n", "S1", "S2", "S3", "S4"}, "");
  if (parse_mode(doc) == Mode::Float) return instance_from_json_as<Complex>(doc);
  return instance_from_json_as<GaussianRational>(doc);
}

template <Scalar S>
json instance_to_json(const ProblemInstance<S>& inst) {
  json doc;
  doc["mode"] = mode_name(ScalarTraits<S>::mode);
  doc["n"] = inst.n;
  for (std::size_t c = 0; c < 4; ++c) {
    json set = json::array();
    for (const auto& p : inst.sets[c]) set.push_back(json{{"A", matrix_to_json(p.A)}, {"B", matrix_to_json(p.B)}});
    doc["S" + std::to_string(c + 1)] = std::move(set);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Matrix files: {"mode", "n", "A", optional "B"}
// ---------------------------------------------------------------------------

template <Scalar S>
struct MatrixFile {
  Matrix<S> A;
  std::optional<Matrix<S>> B;
};

using AnyMatrixFile = std::variant<MatrixFile<Complex>, MatrixFile<GaussianRational>>;

inline AnyMatrixFile matrix_file_from_json(const json& doc) {
  detail::require_object(doc, "<root>");
  detail::reject_unknown(doc, {"mode", "n", "A", "B"}, "");
  const std::size_t n = parse_n(doc);
  auto load = [&]<Scalar S>(S*) -> AnyMatrixFile {
    MatrixFile<S> f{matrix_from_json<S>(detail::require_key(doc, "A", ""), n, "A"), std::nullopt};
    if (doc.contains("B")) f.B = matrix_from_json<S>(doc["B"], n, "B");
    return f;
  };
  if (parse_mode(doc) == Mode::Float) return load(static_cast<Complex*>(nullptr));
  return load(static_cast<GaussianRational*>(nullptr));
}

template <Scalar S>
json matrix_file_to_json(const Matrix<S>& A, const std::optional<Matrix<S>>& B = std::nullopt) {
  json doc{{"mode", mode_name(ScalarTraits<S>::mode)}, {"n", A.rows()}, {"A", matrix_to_json(A)}};
  if (B) doc["B"] = matrix_to_json(*B);
  return doc;
}

// ---------------------------------------------------------------------------
// Witness files: {"mode", "n", "U", "seed", "label"}
// ---------------------------------------------------------------------------

template <Scalar S>
json witness_to_json(const Matrix<S>& U, std::uint64_t seed, const std::string& label) {
  return json{{"mode", mode_name(ScalarTraits<S>::mode)}, {"n", U.rows()}, {"U", matrix_to_json(U)},
              {"seed", seed}, {"label", label}};
}

using AnyMatrix = std::variant<FloatMatrix, ExactMatrix>;

inline AnyMatrix witness_from_json(const json& doc) {
  detail::require_object(doc, "<root>");
  detail::reject_unknown(doc, {"mode", "n", "U", "seed", "label"}, "");
  const std::size_t n = parse_n(doc);
  if (parse_mode(doc) == Mode::Float) return matrix_from_json<Complex>(detail::require_key(doc, "U", ""), n, "U");
  return matrix_from_json<GaussianRational>(detail::require_key(doc, "U", ""), n, "U");
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

template <Scalar S>
json certificate_to_json(const Certificate<S>& cert) {
  if (const auto* tc = std::get_if<TraceCertificate<S>>(&cert)) {
    json j{{"kind", "trace"},
           {"word", tc->word.str()},
           {"trace_left", scalar_to_json(tc->trace_left)},
           {"trace_right", scalar_to_json(tc->trace_right)}};
    if constexpr (!is_exact_v<S>) j["scale"] = tc->scale;
    return j;
  }
  const auto& dc = std::get<DependencyCertificate<S>>(cert);
  json basis = json::array(), coeffs = json::array();
  for (const auto& w : dc.basis) basis.push_back(w.str());
  for (const auto& c : dc.coefficients) coeffs.push_back(scalar_to_json(c));
  json j{{"kind", "dependency"},
         {"word", dc.word.str()},
         {"basis", basis},
         {"coefficients", coeffs},
         {"dependent_side", dc.dependent_side == Side::Left ? "left" : "right"},
         {"residual_left", dc.residual_left},
         {"residual_right", dc.residual_right}};
  if constexpr (!is_exact_v<S>) {
    j["basis_scales"] = dc.basis_scales;
    j["word_scale"] = dc.word_scale;
  }
  return j;
}

/// Key-sorted verdict document. Exact-mode verdicts carry no tolerance or
/// prescale fields.
template <Scalar S>
json verdict_to_json(const Verdict<S>& v, bool with_timing = true) {
  json j{{"result", result_name(v.result)},
         {"engine", engine_name(v.engine)},
         {"route", v.route},
         {"mode", mode_name(ScalarTraits<S>::mode)},
         {"words_checked", v.words_checked},
         {"basis_dimension", v.basis_dimension},
         {"certificate", v.certificate ? certificate_to_json(*v.certificate) : json(nullptr)}};
  if constexpr (!is_exact_v<S>) {
    j["prescale"] = v.prescale;
    if (v.tolerance) j["tolerance"] = *v.tolerance;
  }
  if (with_timing) j["elapsed_ms"] = v.elapsed_ms;
  return j;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << doc.dump(2) << "\n";
}

}  // namespace unieq::io
