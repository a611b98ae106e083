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

double gram_error(const FloatMatrix& U) {
  return distance(mat_mul(adjoint(U), U), FloatMatrix::identity(U.rows()));
}

TEST(RandomUnitary, Properties) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FloatMatrix u1 = random_unitary(1, seed);
    EXPECT_LE(std::abs(std::abs(u1(0, 0)) - 1.0), 1e-14);
    for (std::size_t n = 2; n <= 6; ++n) EXPECT_LE(gram_error(random_unitary(n, seed * 7 + n)), 1e-12);
  }
  EXPECT_EQ(random_unitary(4, std::uint64_t{1}), random_unitary(4, std::uint64_t{1}));
  EXPECT_NE(random_unitary(4, std::uint64_t{1}), random_unitary(4, std::uint64_t{2}));
}

TEST(RandomUnitary, PhasesAreSpread) {
  // Haar measure on U(1): the phase is uniform, so its mean is near 0.
  Complex mean = 0.0;
  const int draws = 2000;
  for (int s = 0; s < draws; ++s) mean += random_unitary(1, static_cast<std::uint64_t>(s))(0, 0);
  EXPECT_LT(std::abs(mean) / draws, 0.1);
}

TEST(RationalUnitary, ExactlyUnitary) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 4; ++n) {
    const ExactMatrix U = random_rational_unitary(n, rng);
    EXPECT_EQ(mat_mul(U, adjoint(U)), ExactMatrix::identity(n));
  }
}

TEST(MakeYesInstance, Examples) {
  const auto s1 = make_yes_instance(1, {1, 0, 0, 0}, 5);
  EXPECT_LE(distance(s1.inst.sets[0][0].A, s1.inst.sets[0][0].B), 1e-14);
  EXPECT_EQ(s1.label, InstanceLabel::Yes);
  const auto s2 = make_yes_instance(1, {0, 1, 0, 0}, 5);
  EXPECT_NEAR(std::abs(s2.inst.sets[1][0].A(0, 0)), std::abs(s2.inst.sets[1][0].B(0, 0)), 1e-14);

  const auto g = make_yes_instance(2, {1, 1, 1, 1}, 3);
  EXPECT_TRUE(verify_witness(g.inst, g.witness));
  EXPECT_TRUE(solve_general(g.inst).equivalent());
  for (const auto& set : g.inst.sets)
    for (const auto& p : set) EXPECT_NEAR(frobenius_norm(p.B), 1.0, 1e-12);

  EXPECT_THROW(make_yes_instance(2, {0, 0, 0, 0}, 1), InputError);
  EXPECT_THROW(make_yes_instance(0, {1, 0, 0, 0}, 1), InputError);
}

TEST(MakeYesInstance, Deterministic) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = make_yes_instance(3, {2, 1, 0, 1}, seed);
    const auto b = make_yes_instance(3, {2, 1, 0, 1}, seed);
    EXPECT_EQ(a.witness, b.witness);
    for (std::size_t c = 0; c < 4; ++c) {
      ASSERT_EQ(a.inst.sets[c].size(), b.inst.sets[c].size());
      for (std::size_t p = 0; p < a.inst.sets[c].size(); ++p) {
        EXPECT_EQ(a.inst.sets[c][p].A, b.inst.sets[c][p].A);
        EXPECT_EQ(a.inst.sets[c][p].B, b.inst.sets[c][p].B);
      }
    }
    const auto pa = perturb_to_no(a, 0.1, 9), pb = perturb_to_no(b, 0.1, 9);
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t p = 0; p < a.inst.sets[c].size(); ++p) EXPECT_EQ(pa.inst.sets[c][p].A, pb.inst.sets[c][p].A);
  }
}

TEST(PerturbToNo, Behaviour) {
  const auto g = make_yes_instance(2, {1, 0, 0, 0}, 2);
  EXPECT_THROW(perturb_to_no(g, 0.0, 1), InputError);
  EXPECT_THROW(perturb_to_no(g, -1.0, 1), InputError);
  const auto p = perturb_to_no(g, 0.1, 1);
  EXPECT_EQ(p.label, InstanceLabel::NoPerturbed);
  EXPECT_NEAR(distance(p.inst.sets[0][0].A, g.inst.sets[0][0].A), 0.1, 1e-12);
  EXPECT_EQ(p.inst.sets[0][0].B, g.inst.sets[0][0].B);

  const auto c = make_yes_instance(1, {0, 1, 0, 0}, 4);
  EXPECT_FALSE(solve_general(perturb_to_no(c, 0.1, 4).inst).equivalent());

  int no = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto y = make_yes_instance(2, {1, 1, 0, 0}, 300 + seed);
    no += solve_general(perturb_to_no(y, 0.1, seed).inst).equivalent() ? 0 : 1;
  }
  EXPECT_EQ(no, 50);
}

TEST(MakeExactYesInstance, VerifiesExactly) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = make_exact_yes_instance(2, {1, 1, 1, 1}, seed);
    EXPECT_TRUE(verify_witness(g.inst, g.witness));
    EXPECT_TRUE(is_zero_matrix(mat_mul(g.witness, adjoint(g.witness)) - ExactMatrix::identity(2)));
  }
}

TEST(Intertwiner, Examples) {
  const auto z = intertwiner_space(FloatMatrix{{0.0}}, FloatMatrix{{0.0}}, false);
  ASSERT_EQ(z.basis.size(), 1u);
  EXPECT_NEAR(std::abs(z.basis[0](0, 0)), 1.0, 1e-14);

  const FloatMatrix J{{0.0, 1.0}, {0.0, 0.0}};
  const auto c = intertwiner_space(J, J, false);
  ASSERT_EQ(c.basis.size(), 2u);
  EXPECT_FALSE(c.marginal);
  // Every basis element lies in span{I, J}: zero (2,1) entry, equal diagonal.
  std::vector<FloatMatrix> span{FloatMatrix::identity(2), J};
  for (const auto& W : c.basis) {
    EXPECT_LE(least_squares_coeffs<Complex>(span, W).residual, 1e-10);
  }

  const Complex a(0.7, -0.2);
  auto [ga, gb] = build_similarity_gadget<Complex>({{FloatMatrix{{a}}, FloatMatrix{{a}}}}, 1);
  const auto g = intertwiner_space(ga.M, gb.M, false);
  ASSERT_FALSE(g.basis.empty());
  for (const auto& W : g.basis) {
    EXPECT_TRUE(is_block_upper_triangular(W, 1, 1e-8));
    EXPECT_TRUE(diagonal_blocks_match(W, 1, false, 1e-8));
  }
  EXPECT_THROW(intertwiner_space(J, FloatMatrix::identity(3), false), DimensionError);
}

TEST(Intertwiner, ConjugateLinearScalar) {
  // a·w̄ = w·b for scalars: solutions exist iff |a| = |b|, forming a real line.
  const auto s = intertwiner_space(FloatMatrix{{Complex(0.0, 2.0)}}, FloatMatrix{{2.0}}, true);
  ASSERT_EQ(s.basis.size(), 1u);
  const Complex w = s.basis[0](0, 0);
  EXPECT_NEAR(std::abs(Complex(0.0, 2.0) * std::conj(w) - w * 2.0), 0.0, 1e-12);
  EXPECT_TRUE(intertwiner_space(FloatMatrix{{1.0}}, FloatMatrix{{2.0}}, true).basis.empty());
}

TEST(Intertwiner, SimilarityGadgetStructure) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 10 && seed < 40; ++seed) {
    const std::size_t n = 1 + seed % 2;
    const auto g = make_yes_instance(n, {1 + seed % 2, 0, 0, 0}, 700 + seed);
    auto [ga, gb] = build_similarity_gadget(g.inst.sets[0], n);
    const auto sp = intertwiner_space(ga.M, gb.M, false);
    if (sp.marginal) continue;
    ++checked;
    ASSERT_FALSE(sp.basis.empty());
    for (const auto& W : sp.basis) {
      EXPECT_TRUE(is_block_upper_triangular(W, n, 1e-8));
      EXPECT_TRUE(diagonal_blocks_match(W, n, false, 1e-8));
    }
  }
  EXPECT_EQ(checked, 10);
}

TEST(Intertwiner, ParityGadgetStructure) {
  const std::array<std::array<std::size_t, 4>, 4> shapes{{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}}};
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 12 && seed < 60; ++seed) {
    const std::size_t n = 1 + seed % 2;
    const auto g = make_yes_instance(n, shapes[seed % 4], 800 + seed);
    auto [ga, gb] = build_general_gadget(g.inst);
    ASSERT_LE(ga.layout.k, 4u);
    const auto sp = intertwiner_space(ga.M, gb.M, true);
    if (sp.marginal) continue;
    ++checked;
    ASSERT_FALSE(sp.basis.empty());
    for (const auto& W : sp.basis) {
      EXPECT_TRUE(is_block_upper_triangular(W, n, 1e-8));
      EXPECT_TRUE(diagonal_blocks_match(W, n, true, 1e-8));
    }
  }
  EXPECT_EQ(checked, 12);
}

TEST(StructurePredicates, DetectViolations) {
  FloatMatrix W = FloatMatrix::identity(4);
  EXPECT_TRUE(is_block_upper_triangular(W, 2, 1e-8));
  EXPECT_TRUE(diagonal_blocks_match(W, 2, false, 1e-8));
  W(2, 0) = 1.0;
  EXPECT_FALSE(is_block_upper_triangular(W, 2, 1e-8));
  FloatMatrix D = FloatMatrix::identity(2);
  D(0, 0) = Complex(0.0, 1.0);
  FloatMatrix V(4, 4);
  V.set_block(0, 0, D);
  V.set_block(1, 1, conjugate(D));
  EXPECT_FALSE(diagonal_blocks_match(V, 2, false, 1e-8));
  EXPECT_TRUE(diagonal_blocks_match(V, 2, true, 1e-8));
}

}  // namespace
}  // namespace unieq
