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

// unieq: command-line front end. Every subcommand prints one JSON document on
// stdout; diagnostics go to stderr.
//
// Exit codes: 0 equivalent / success, 1 not equivalent / invalid witness,
// 2 input error, 3 brute-force budget exceeded.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "unieq/io.hpp"
#include "unieq/unieq.hpp"

namespace {

using unieq::io::json;

constexpr int kExitEquivalent = 0;
constexpr int kExitNotEquivalent = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

unsigned default_threads() {
  if (const char* env = std::getenv("UNIEQ_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
    std::cerr << "warning: ignoring UNIEQ_THREADS='" << env << "'\n";
  }
  return 1;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json layout_to_json(const unieq::GadgetLayout& layout) {
  json placements = json::array();
  for (const auto& p : layout.placements) {
    placements.push_back({{"set", p.set_id},
                          {"pair", p.pair_index},
                          {"i", p.i},
                          {"j", p.j},
                          {"parity", std::string(p.i % 2 ? "odd" : "even") + "-" + (p.j % 2 ? "odd" : "even")}});
  }
  return {{"n", layout.n},
          {"k", layout.k},
          {"kind", layout.kind == unieq::LayoutKind::General ? "general" : "similarity"},
          {"placements", placements}};
}

struct DecideArgs {
  std::string path;
  std::string engine = "auto";
  std::string similarity_route = "direct";
  std::string congruence_route = "triple";
  double tol = 1e-8;
  double budget = 1e7;
  unsigned threads = 1;
  int max_length = -1;
  bool no_timing = false;
  bool no_shortcut = false;
};

int run_decide(const DecideArgs& a) {
  unieq::DecideOptions o;
  o.engine = a.engine == "brute" ? unieq::EngineChoice::Brute
             : a.engine == "closure" ? unieq::EngineChoice::Closure
                                     : unieq::EngineChoice::Auto;
  o.similarity_route = a.similarity_route == "gadget" ? unieq::SimilarityRoute::Gadget : unieq::SimilarityRoute::Direct;
  o.congruence_route = a.congruence_route == "k" ? unieq::CongruenceRoute::KGadget : unieq::CongruenceRoute::Triple;
  o.tol = a.tol;
  o.budget = a.budget;
  o.threads = a.threads;
  o.allow_shortcut = !a.no_shortcut;
  if (a.max_length >= 0) o.brute_max_length = static_cast<std::uint32_t>(a.max_length);
  const auto inst = unieq::io::instance_from_json(unieq::io::read_json_file(a.path));
  return std::visit(
      [&](const auto& in) {
        const auto v = unieq::solve_general(in, o);
        emit(unieq::io::verdict_to_json(v, !a.no_timing));
        return v.equivalent() ? kExitEquivalent : kExitNotEquivalent;
      },
      inst);
}

int run_bound(int m) {
  const double b = unieq::pappacena_bound(m);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f (floor %d)", b, unieq::pappacena_length(m));
  emit({{"m", m}, {"bound", b}, {"floor", unieq::pappacena_length(m)}, {"display", buf}});
  return 0;
}

int run_gadget(const std::string& path, const std::string& which) {
  const json doc = unieq::io::read_json_file(path);
  if (which == "K" || which == "Kprime") {
    const auto file = unieq::io::matrix_file_from_json(doc);
    return std::visit(
        [&](const auto& f) {
          auto build = [&](const auto& M) {
            return which == "K" ? unieq::build_congruence_K(M) : unieq::build_congruence_K_prime(M);
          };
          json out{{"which", which}, {"A", unieq::io::matrix_to_json(build(f.A))}};
          if (f.B) out["B"] = unieq::io::matrix_to_json(build(*f.B));
          emit(out);
          return 0;
        },
        file);
  }
  const auto inst = unieq::io::instance_from_json(doc);
  return std::visit(
      [&](const auto& in) {
        if (which == "similarity") {
          if (!in.only_similarity()) throw unieq::InputError("similarity gadget: only S1 may be nonempty");
          auto [ga, gb] = unieq::build_similarity_gadget(in.sets[0], in.n);
          emit({{"which", which},
                {"layout", layout_to_json(ga.layout)},
                {"A", unieq::io::matrix_to_json(ga.M)},
                {"B", unieq::io::matrix_to_json(gb.M)}});
        } else {
          auto [ga, gb] = unieq::build_general_gadget(in);
          emit({{"which", which},
                {"layout", layout_to_json(ga.layout)},
                {"A", unieq::io::matrix_to_json(ga.M)},
                {"B", unieq::io::matrix_to_json(gb.M)}});
        }
        return 0;
      },
      inst);
}

int run_words(const std::string& path, int max_length, int max_exponent, double tol) {
  if (max_length < 1) throw unieq::InputError("--max-length must be at least 1");
  const auto file = unieq::io::matrix_file_from_json(unieq::io::read_json_file(path));
  return std::visit(
      [&](const auto& f) {
        using S = typename std::decay_t<decltype(f.A)>::value_type;
        std::optional<std::uint32_t> cap;
        if (max_exponent > 0) cap = static_cast<std::uint32_t>(max_exponent);
        const auto len = static_cast<std::uint32_t>(max_length);
        const auto left = unieq::word_trace_spectrum<S>(f.A, unieq::adjoint(f.A), len, cap);
        std::optional<std::vector<std::pair<unieq::Word, S>>> right;
        if (f.B) right = unieq::word_trace_spectrum<S>(*f.B, unieq::adjoint(*f.B), len, cap);
        json rows = json::array();
        std::size_t mismatches = 0;
        for (std::size_t i = 0; i < left.size(); ++i) {
          json row{{"word", left[i].first.str()}, {"trace_A", unieq::io::scalar_to_json(left[i].second)}};
          if (right) {
            const bool match = unieq::scalars_agree(left[i].second, (*right)[i].second, tol);
            row["trace_B"] = unieq::io::scalar_to_json((*right)[i].second);
            row["match"] = match;
            if (!match) ++mismatches;
          }
          rows.push_back(std::move(row));
        }
        json out{{"max_length", max_length}, {"rows", rows}};
        if (cap) out["max_exponent"] = *cap;
        if (right) out["mismatches"] = mismatches;
        emit(out);
        return 0;
      },
      file);
}

struct GenArgs {
  std::size_t n = 2;
  std::vector<std::size_t> m{1, 0, 0, 0};
  std::uint64_t seed = 0;
  double perturb = 0.0;
  std::uint64_t perturb_seed = 0;
  bool exact = false;
  std::string out;
  std::string witness;
};

int run_gen(const GenArgs& a) {
  if (a.m.size() != 4) throw unieq::InputError("--m takes four comma-separated counts");
  const std::array<std::size_t, 4> m{a.m[0], a.m[1], a.m[2], a.m[3]};
  auto write = [&](const auto& g) {
    unieq::io::write_json_file(a.out, unieq::io::instance_to_json(g.inst));
    unieq::io::write_json_file(a.witness, unieq::io::witness_to_json(g.witness, g.seed, unieq::label_name(g.label)));
    emit({{"instance", a.out}, {"witness", a.witness}, {"label", unieq::label_name(g.label)}, {"seed", g.seed}});
  };
  if (a.exact) {
    if (a.perturb > 0.0) throw unieq::InputError("--perturb is float-only");
    write(unieq::make_exact_yes_instance(a.n, m, a.seed));
  } else {
    auto g = unieq::make_yes_instance(a.n, m, a.seed);
    if (a.perturb != 0.0) g = unieq::perturb_to_no(g, a.perturb, a.perturb_seed);
    write(g);
  }
  return 0;
}

int run_verify(const std::string& inst_path, const std::string& witness_path, double tol) {
  const auto inst = unieq::io::instance_from_json(unieq::io::read_json_file(inst_path));
  const auto U = unieq::io::witness_from_json(unieq::io::read_json_file(witness_path));
  if (inst.index() != U.index()) throw unieq::ModeError("instance and witness use different modes");
  return std::visit(
      [&](const auto& in) {
        using M = std::decay_t<decltype(in.sets[0][0].A)>;
        const auto& u = std::get<M>(U);
        const auto r = unieq::witness_report(in, u, tol);
        emit({{"valid", r.valid},
              {"unitarity_residual", r.unitarity_residual},
              {"max_relation_residual", r.max_relation_residual}});
        return r.valid ? kExitEquivalent : kExitNotEquivalent;
      },
      inst);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide simultaneous unitary similarity and congruence of matrix pairs"};
  app.require_subcommand(1);

  DecideArgs decide;
  decide.threads = default_threads();
  auto* cmd_decide = app.add_subcommand("decide", "Decide an instance file");
  cmd_decide->add_option("path", decide.path, "Instance JSON file")->required();
  cmd_decide->add_option("--engine", decide.engine, "auto | closure | brute")
      ->check(CLI::IsMember({"auto", "closure", "brute"}));
  cmd_decide->add_option("--similarity-route", decide.similarity_route, "direct | gadget")
      ->check(CLI::IsMember({"direct", "gadget"}));
  cmd_decide->add_option("--congruence-route", decide.congruence_route, "triple | k")
      ->check(CLI::IsMember({"triple", "k"}));
  cmd_decide->add_option("--tol", decide.tol, "Float comparison tolerance");
  cmd_decide->add_option("--budget", decide.budget, "Brute engine word ceiling");
  cmd_decide->add_option("--threads", decide.threads, "Brute engine worker threads (default $UNIEQ_THREADS or 1)");
  cmd_decide->add_option("--max-length", decide.max_length, "Brute engine word length (default: full bound)");
  cmd_decide->add_flag("--no-timing", decide.no_timing, "Omit elapsed_ms for byte-stable output");
  cmd_decide->add_flag("--no-shortcut", decide.no_shortcut, "Always keep the third congruence pair");

  int bound_m = 0;
  auto* cmd_bound = app.add_subcommand("bound", "Word-length bound for m x m matrices");
  cmd_bound->add_option("m", bound_m, "Matrix size")->required();

  std::string gadget_path, gadget_which = "general";
  auto* cmd_gadget = app.add_subcommand("gadget", "Print constructed gadget matrices");
  cmd_gadget->add_option("path", gadget_path, "Instance file (similarity, general) or matrix file (K, Kprime)")
      ->required();
  cmd_gadget->add_option("--which", gadget_which, "similarity | general | K | Kprime")
      ->check(CLI::IsMember({"similarity", "general", "K", "Kprime"}));

  std::string words_path;
  int words_len = 4, words_cap = 0;
  double words_tol = 1e-8;
  auto* cmd_words = app.add_subcommand("words", "Trace table of W(A, A*) and W(B, B*)");
  cmd_words->add_option("path", words_path, "Matrix file with A and optional B")->required();
  cmd_words->add_option("--max-length", words_len, "Longest word");
  cmd_words->add_option("--max-exponent", words_cap, "Exponent cap (0 = none)");
  cmd_words->add_option("--tol", words_tol, "Float comparison tolerance");

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a YES (or perturbed) instance with its witness");
  cmd_gen->add_option("--n", gen.n, "Block size")->required();
  cmd_gen->add_option("--m", gen.m, "Set sizes m1,m2,m3,m4")->delimiter(',')->expected(4)->required();
  cmd_gen->add_option("--seed", gen.seed, "Seed")->required();
  cmd_gen->add_option("--perturb", gen.perturb, "Perturbation size epsilon (float only)");
  cmd_gen->add_option("--perturb-seed", gen.perturb_seed, "Seed for the perturbation");
  cmd_gen->add_flag("--exact", gen.exact, "Exact rational instance with a rational unitary witness");
  cmd_gen->add_option("--out", gen.out, "Instance output path")->required();
  cmd_gen->add_option("--witness", gen.witness, "Witness output path")->required();

  std::string verify_inst, verify_witness;
  double verify_tol = 1e-10;
  auto* cmd_verify = app.add_subcommand("verify", "Check a witness unitary against an instance");
  cmd_verify->add_option("instance", verify_inst, "Instance file")->required();
  cmd_verify->add_option("witness", verify_witness, "Witness file")->required();
  cmd_verify->add_option("--tol", verify_tol, "Residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  try {
    if (*cmd_decide) return run_decide(decide);
    if (*cmd_bound) return run_bound(bound_m);
    if (*cmd_gadget) return run_gadget(gadget_path, gadget_which);
    if (*cmd_words) return run_words(words_path, words_len, words_cap, words_tol);
    if (*cmd_gen) return run_gen(gen);
    if (*cmd_verify) return run_verify(verify_inst, verify_witness, verify_tol);
  } catch (const unieq::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const unieq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
