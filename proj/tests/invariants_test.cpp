// Copyright 2026 The uwit Authors
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

#include "uwit/invariants.hpp"

#include "gtest/gtest.h"
#include "test_support.hpp"
#include "uwit/verify.hpp"

using namespace uwit;
namespace ut = uwit::testing;

TEST(decompose, singlet_correlations) {
  const BlochDecomposition b = decompose(ut::singlet());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(b.s[i], 0.0, 1e-15);
    EXPECT_NEAR(b.p[i], 0.0, 1e-15);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(b.beta[i][j], i == j ? -1.0 : 0.0, 1e-15);
  }
}

TEST(decompose, local_bloch_vectors_match_reduced_states) {
  for (const auto& rho : ut::random_states(50, 41)) {
    const BlochDecomposition b = decompose(rho);
    const Eigen::Matrix2cd ra = ut::reduce_to_a(rho.matrix());
    const Eigen::Matrix2cd rb = ut::reduce_to_b(rho.matrix());
    EXPECT_NEAR(b.s[0], 2 * ra(0, 1).real(), 1e-14);
    EXPECT_NEAR(b.s[1], -2 * ra(0, 1).imag(), 1e-14);
    EXPECT_NEAR(b.s[2], (ra(0, 0) - ra(1, 1)).real(), 1e-14);
    EXPECT_NEAR(b.p[0], 2 * rb(0, 1).real(), 1e-14);
    EXPECT_NEAR(b.p[1], -2 * rb(0, 1).imag(), 1e-14);
    EXPECT_NEAR(b.p[2], (rb(0, 0) - rb(1, 1)).real(), 1e-14);
  }
}

TEST(decompose, reconstruction_round_trip) {
  for (const auto& rho : ut::random_states(500, 42)) EXPECT_LT(max_abs_diff(reconstruct(decompose(rho)), rho.matrix()), 1e-12);
}

TEST(makhlin, singlet_values) {
  const InvariantSet inv = makhlin(decompose(ut::singlet()));
  EXPECT_NEAR(inv.i1, -1.0, 1e-14);
  EXPECT_NEAR(inv.i2, 3.0, 1e-14);
  EXPECT_NEAR(inv.i3, 3.0, 1e-14);
  EXPECT_NEAR(inv.i4, 0.0, 1e-14);
  EXPECT_NEAR(inv.i7, 0.0, 1e-14);
  EXPECT_NEAR(inv.x1, 3.0, 1e-14);
  EXPECT_NEAR(inv.x2, -1.0, 1e-14);
  EXPECT_NEAR(inv.x3, 6.0, 1e-14);
  EXPECT_NEAR(inv.x4, 0.0, 1e-14);
}

TEST(makhlin, werner_half_values) {
  const InvariantSet inv = makhlin(decompose(ut::werner(0.5)));
  EXPECT_NEAR(inv.i1, -0.125, 1e-15);
  EXPECT_NEAR(inv.i2, 0.75, 1e-15);
  EXPECT_NEAR(inv.i3, 0.1875, 1e-15);
  EXPECT_NEAR(inv.x3, 0.375, 1e-15);
}

TEST(makhlin, local_vectors_enter_for_product_states) {
  // |0><0| ⊗ |0><0|: s = p = z, beta = zz.
  const InvariantSet inv = makhlin(decompose(named_state({StateFamily::kProduct, 0.0})));
  EXPECT_NEAR(inv.i4, 1.0, 1e-15);
  EXPECT_NEAR(inv.i7, 1.0, 1e-15);
  EXPECT_NEAR(inv.i2, 1.0, 1e-15);
  EXPECT_NEAR(inv.i12, 1.0, 1e-15);
}

TEST(moments_from_invariants, fixtures) {
  const MomentSet s = moments_invariants(ut::singlet());
  EXPECT_NEAR(s.pi2, 1.0, 1e-14);
  EXPECT_NEAR(s.pi3, 0.25, 1e-14);
  EXPECT_NEAR(s.pi4, 0.25, 1e-14);
  EXPECT_EQ(s.source, MomentSource::kInvariants);
  const MomentSet m = moments_invariants(ut::maximally_mixed());
  EXPECT_NEAR(m.pi2, 0.25, 1e-15);
  EXPECT_NEAR(m.pi3, 1.0 / 16, 1e-15);
  EXPECT_NEAR(m.pi4, 1.0 / 64, 1e-15);
}

TEST(moments_from_invariants, reads_only_y) {
  const InvariantSet inv = makhlin(decompose(ut::werner(0.7)));
  InvariantSet scrambled;
  scrambled.y = inv.y;
  scrambled.i1 = scrambled.i2 = scrambled.i3 = scrambled.x1 = scrambled.x4 = 1e6;
  const MomentSet a = moments_from_invariants(inv);
  const MomentSet b = moments_from_invariants(scrambled);
  EXPECT_EQ(a.pi2, b.pi2);
  EXPECT_EQ(a.pi3, b.pi3);
  EXPECT_EQ(a.pi4, b.pi4);
}

TEST(moments_from_invariants, agree_with_direct_route) {
  for (Ensemble kind : {Ensemble::kHilbertSchmidt, Ensemble::kHaarPure})
    for (const auto& rho : ut::random_states(1000, 43, kind)) {
      const MomentSet inv = moments_invariants(rho);
      for (int n = 2; n <= 4; ++n) EXPECT_NEAR(inv[n], ut::brute_moment(rho.matrix(), n), 1e-10);
    }
}

TEST(makhlin, invariant_under_local_unitaries) {
  Rng rng(44);
  for (const auto& rho : ut::random_states(200, 45)) {
    const InvariantSet a = makhlin(decompose(rho));
    const InvariantSet b = makhlin(decompose(apply_local_unitary(rho, random_qubit_unitary(rng), random_qubit_unitary(rng))));
    for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(a.y[k], b.y[k], 1e-9) << k;
    EXPECT_NEAR(a.i14, b.i14, 1e-9);
  }
}

TEST(verify, identity_suites_pass) {
  for (const SuiteResult& r : run_identity_suites({.samples = 100, .seed = 3})) {
    EXPECT_TRUE(r.passed()) << r.name << " " << r.max_deviation;
    EXPECT_GT(r.cases, 0U) << r.name;
  }
}
