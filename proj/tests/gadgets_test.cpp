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

#include "test_util.hpp"

namespace unieq {
namespace {

using testing::random_float;

FloatMatrix scalar(Complex z) { return FloatMatrix{{z}}; }

// W = U ⊕ V ⊕ U ⊕ V ⊕ ... with k blocks.
FloatMatrix alternating_sum(const FloatMatrix& U, const FloatMatrix& V, std::size_t k) {
  std::vector<FloatMatrix> blocks;
  for (std::size_t b = 0; b < k; ++b) blocks.push_back(b % 2 == 0 ? U : V);
  return direct_sum<Complex>(blocks);
}

void expect_skeleton(const FloatMatrix& M, std::size_t n, std::size_t k) {
  ASSERT_EQ(M.rows(), n * k);
  for (std::size_t b = 0; b + 1 < k; ++b) EXPECT_EQ(M.block(b, b + 1, n), FloatMatrix::identity(n));
  for (std::size_t bi = 0; bi < k; ++bi)
    for (std::size_t bj = 0; bj <= bi; ++bj) EXPECT_EQ(M.block(bi, bj, n), FloatMatrix::zeros(n, n));
}

TEST(PlanLayout, MinimalExamples) {
  auto l = plan_layout(0, 1, 0, 0, 1);
  EXPECT_EQ(l.k, 3u);
  EXPECT_EQ(l.placements, (std::vector<Placement>{{2, 0, 1, 3}}));
  l = plan_layout(1, 0, 0, 0, 1);
  EXPECT_EQ(l.k, 4u);
  EXPECT_EQ(l.placements, (std::vector<Placement>{{1, 0, 1, 4}}));
  l = plan_layout(0, 0, 0, 1, 1);
  EXPECT_EQ(l.k, 5u);
  EXPECT_EQ(l.placements, (std::vector<Placement>{{4, 0, 2, 5}}));
  l = plan_layout(1, 1, 0, 0, 2);
  EXPECT_EQ(l.k, 4u);
  EXPECT_EQ(l.placements, (std::vector<Placement>{{1, 0, 1, 4}, {2, 0, 1, 3}}));
  EXPECT_THROW(plan_layout(0, 0, 0, 0, 1), InputError);
}

// Oracle: smallest k at which every class has enough slots, by direct count.
std::size_t oracle_k(std::array<std::size_t, 4> m) {
  for (std::size_t k = 1;; ++k) {
    std::array<std::size_t, 4> have{};
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = 1; j <= k; ++j)
        if (j >= i + 2) ++have[(i % 2 == 1) ? (j % 2 == 0 ? 0 : 1) : (j % 2 == 0 ? 2 : 3)];
    bool ok = true;
    for (int c = 0; c < 4; ++c) ok = ok && have[c] >= m[c];
    if (ok) return k;
  }
}

TEST(PlanLayout, MinimalMonotoneAndValid) {
  for (std::size_t a = 0; a <= 4; ++a)
    for (std::size_t b = 0; b <= 4; ++b)
      for (std::size_t c = 0; c <= 4; ++c)
        for (std::size_t d = 0; d <= 4; ++d) {
          if (a + b + c + d == 0) continue;
          const auto l = plan_layout(a, b, c, d, 1);
          EXPECT_EQ(l.k, oracle_k({a, b, c, d}));
          EXPECT_NO_THROW(l.validate());
          EXPECT_EQ(l.placements.size(), a + b + c + d);
          EXPECT_LE(l.k, plan_layout(a + 1, b, c, d, 1).k);
          EXPECT_LE(l.k, plan_layout(a, b + 1, c, d, 1).k);
          EXPECT_LE(l.k, plan_layout(a, b, c + 1, d, 1).k);
          EXPECT_LE(l.k, plan_layout(a, b, c, d + 1, 1).k);
        }
}

TEST(GadgetLayout, ValidateRejectsBadPlacements) {
  GadgetLayout l{1, 4, LayoutKind::General, {{1, 0, 1, 2}}};
  EXPECT_THROW(l.validate(), DimensionError);
  l.placements = {{2, 0, 1, 4}};
  EXPECT_THROW(l.validate(), DimensionError);
  l.placements = {{1, 0, 1, 4}, {1, 1, 1, 4}};
  EXPECT_THROW(l.validate(), DimensionError);
  l.placements = {{1, 0, 1, 6}};
  EXPECT_THROW(l.validate(), DimensionError);
}

TEST(SimilarityGadget, ScalarExample) {
  const Complex a(2.0, 1.0), b(-3.0, 0.5);
  auto [ga, gb] = build_similarity_gadget<Complex>({{scalar(a), scalar(b)}}, 1);
  const FloatMatrix expect_a{{0.0, 1.0, a}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
  const FloatMatrix expect_b{{0.0, 1.0, b}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
  EXPECT_EQ(ga.M, expect_a);
  EXPECT_EQ(gb.M, expect_b);
  EXPECT_EQ(power(ga.M, 3), FloatMatrix::zeros(3, 3));
  EXPECT_EQ(nilpotency_index(ga.M), 3u);
}

TEST(SimilarityGadget, TwoPairsBlockPositions) {
  const FloatMatrix A1 = random_float(2, 1), A2 = random_float(2, 2);
  auto [ga, gb] = build_similarity_gadget<Complex>({{A1, A1}, {A2, A2}}, 2);
  expect_skeleton(ga.M, 2, 4);
  EXPECT_EQ(ga.M.block(0, 2, 2), A1);
  EXPECT_EQ(ga.M.block(1, 3, 2), A2);
  EXPECT_EQ(ga.M.block(0, 3, 2), FloatMatrix::zeros(2, 2));
  EXPECT_THROW(build_similarity_gadget<Complex>({}, 2), InputError);
  EXPECT_THROW(build_similarity_gadget<Complex>({{A1, A1}}, 3), DimensionError);
  GadgetLayout small{2, 3, LayoutKind::Similarity, {{1, 0, 1, 3}, {1, 1, 2, 4}}};
  EXPECT_THROW(build_similarity_gadget<Complex>({{A1, A1}, {A2, A2}}, 2, small), DimensionError);
}

TEST(GeneralGadget, Examples) {
  ProblemInstance<Complex> inst;
  inst.n = 1;
  inst.sets[1] = {{scalar(4.0), scalar(5.0)}};
  auto [ga, gb] = build_general_gadget(inst);
  const FloatMatrix expect{{0.0, 1.0, 4.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
  EXPECT_EQ(ga.M, expect);
  EXPECT_EQ(gb.M(0, 2), Complex(5.0));

  ProblemInstance<Complex> empty;
  empty.n = 2;
  EXPECT_THROW(build_general_gadget(empty), InputError);

  ProblemInstance<Complex> two;
  two.n = 2;
  const FloatMatrix A1 = random_float(2, 3), A2 = random_float(2, 4);
  two.sets[0] = {{A1, A1}};
  two.sets[1] = {{A2, A2}};
  auto [g2, h2] = build_general_gadget(two);
  EXPECT_EQ(g2.layout.k, 4u);
  expect_skeleton(g2.M, 2, 4);
  EXPECT_EQ(g2.M.block(0, 2, 2), A2);
  EXPECT_EQ(g2.M.block(0, 3, 2), A1);

  GadgetLayout wrong{2, 4, LayoutKind::General, {{1, 0, 1, 3}, {2, 0, 1, 4}}};
  EXPECT_THROW(build_general_gadget(two, wrong), DimensionError);
  GadgetLayout missing{2, 4, LayoutKind::General, {{1, 0, 1, 4}}};
  EXPECT_THROW(build_general_gadget(two, missing), DimensionError);
}

TEST(Gadgets, NilpotentOfIndexK) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::array<std::size_t, 4> m{seed % 3, (seed / 3) % 2, seed % 2, (seed + 1) % 2};
    if (m[0] + m[1] + m[2] + m[3] == 0) continue;
    const auto g = make_yes_instance(2, m, seed);
    auto [ga, gb] = build_general_gadget(g.inst);
    const std::size_t k = ga.layout.k;
    EXPECT_LE(frobenius_norm(power(ga.M, static_cast<unsigned>(k))), 1e-12);
    EXPECT_GT(frobenius_norm(power(ga.M, static_cast<unsigned>(k - 1))), 0.5);
    expect_skeleton(ga.M, 2, k);
    expect_skeleton(gb.M, 2, k);
  }
  const auto ge = make_exact_yes_instance(2, {1, 1, 1, 1}, 4);
  auto [ea, eb] = build_general_gadget(ge.inst);
  EXPECT_TRUE(is_zero_matrix(power(ea.M, static_cast<unsigned>(ea.layout.k))));
  EXPECT_FALSE(is_zero_matrix(power(ea.M, static_cast<unsigned>(ea.layout.k - 1))));
}

TEST(Gadgets, YesWitnessLiftsToBlockDiagonal) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = make_yes_instance(3, {1 + seed % 2, 1, seed % 3, 1}, 100 + seed);
    auto [ga, gb] = build_general_gadget(g.inst);
    const FloatMatrix W = alternating_sum(g.witness, conjugate(g.witness), ga.layout.k);
    EXPECT_LE(distance(ga.M, mat_mul(mat_mul(W, gb.M), transpose(W))), 1e-10);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = make_yes_instance(2, {2 + seed % 3, 0, 0, 0}, 200 + seed);
    auto [ga, gb] = build_similarity_gadget(g.inst.sets[0], 2);
    const FloatMatrix W = alternating_sum(g.witness, g.witness, ga.layout.k);
    EXPECT_LE(distance(ga.M, mat_mul(mat_mul(W, gb.M), adjoint(W))), 1e-10);
  }
}

TEST(CongruenceK, Blocks) {
  const FloatMatrix Z = FloatMatrix::zeros(2, 2);
  const FloatMatrix K0 = build_congruence_K(Z);
  expect_skeleton(K0, 2, 4);
  EXPECT_EQ(frobenius_norm(K0), std::sqrt(6.0));

  const FloatMatrix J{{0.0, 1.0}, {0.0, 0.0}};
  const FloatMatrix K = build_congruence_K(J);
  EXPECT_EQ(K.block(0, 2, 2), (FloatMatrix{{1.0, 0.0}, {0.0, 0.0}}));
  EXPECT_EQ(K.block(0, 3, 2), Z);
  EXPECT_EQ(K.block(1, 3, 2), (FloatMatrix{{0.0, 0.0}, {0.0, 1.0}}));
  const FloatMatrix Kp = build_congruence_K_prime(J);
  EXPECT_EQ(Kp.block(1, 3, 2), Z);
  EXPECT_EQ(Kp.block(0, 2, 2), K.block(0, 2, 2));
  EXPECT_THROW(build_congruence_K(FloatMatrix(2, 3)), DimensionError);

  for (std::uint64_t s = 0; s < 5; ++s) {
    const FloatMatrix A = random_float(3, 300 + s);
    const FloatMatrix KA = build_congruence_K(A);
    EXPECT_LE(frobenius_norm(power(KA, 4)), 1e-12 * std::pow(1.0 + frobenius_norm(KA), 4));
    EXPECT_GT(frobenius_norm(power(KA, 3)), 0.5);
    expect_skeleton(KA, 3, 4);
  }
  Rng rng(8);
  const ExactMatrix E = random_small_rational(3, rng);
  EXPECT_TRUE(is_zero_matrix(power(build_congruence_K(E), 4)));
  EXPECT_FALSE(is_zero_matrix(power(build_congruence_K(E), 3)));
}

TEST(CongruenceTriple, PairsAndShortcut) {
  const FloatMatrix I3 = FloatMatrix::identity(3);
  auto t = congruence_triple(I3, I3, false);
  ASSERT_EQ(t.size(), 3u);
  for (const auto& p : t) {
    EXPECT_EQ(p.A, I3);
    EXPECT_EQ(p.B, I3);
  }
  EXPECT_EQ(congruence_triple(I3, I3, true).size(), 2u);

  const FloatMatrix J{{0.0, 1.0}, {0.0, 0.0}}, J2{{0.0, 2.0}, {0.0, 0.0}};
  t = congruence_triple(J, J2);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].A, (FloatMatrix{{1.0, 0.0}, {0.0, 0.0}}));
  EXPECT_EQ(t[0].B, (FloatMatrix{{4.0, 0.0}, {0.0, 0.0}}));

  const FloatMatrix A = random_float(3, 55);
  EXPECT_EQ(congruence_triple(A, random_float(3, 56), true).size(), 2u);
  EXPECT_EQ(congruence_triple(A, random_float(3, 56), false).size(), 3u);
  EXPECT_THROW(congruence_triple(A, J), DimensionError);

  const ExactMatrix Ej{{GaussianRational(0), GaussianRational(1)}, {GaussianRational(0), GaussianRational(0)}};
  EXPECT_EQ(congruence_triple(Ej, Ej, true).size(), 3u);
  EXPECT_EQ(congruence_triple(ExactMatrix::identity(2), Ej, true).size(), 2u);
}

}  // namespace
}  // namespace unieq
