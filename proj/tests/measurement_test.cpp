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

#include "uwit/measurement.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "test_support.hpp"

using namespace uwit;
namespace ut = uwit::testing;

namespace {

ShotRecord record(int n, std::uint64_t pp, std::uint64_t pm, std::uint64_t mp, std::uint64_t mm) {
  ShotRecord r;
  r.n_copies = n;
  r.counts = {{{pp, pm}, {mp, mm}}};
  r.shots = r.total();
  r.seed = static_cast<std::uint64_t>(n);
  return r;
}

}  // namespace

TEST(sample_shots, singlet_never_gives_mixed_outcomes) {
  const ShotRecord r = sample_shots(ut::singlet(), 2, 100000, 1);
  EXPECT_EQ(r.counts[0][1], 0U);
  EXPECT_EQ(r.counts[1][0], 0U);
  EXPECT_EQ(r.total(), 100000U);
  EXPECT_EQ(r.signed_mean(), 1.0);
}

TEST(sample_shots, single_shot_lands_in_one_cell) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ShotRecord r = sample_shots(ut::werner(0.4), 3, 1, seed);
    int nonzero = 0;
    for (const auto& row : r.counts)
      for (std::uint64_t c : row) nonzero += c != 0;
    EXPECT_EQ(nonzero, 1);
    EXPECT_EQ(r.total(), 1U);
  }
}

TEST(sample_shots, frequencies_match_probabilities) {
  constexpr std::uint64_t kShots = 1000000;
  const OutcomeTable t = outcome_probabilities(ut::maximally_mixed(), 2);
  const ShotRecord r = sample_shots(t, kShots, 7);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) {
      const double p = t.p[y][x];
      const double sigma = std::sqrt(kShots * p * (1 - p));
      EXPECT_NEAR(static_cast<double>(r.counts[y][x]), kShots * p, 5 * sigma) << y << x;
    }
}

TEST(sample_shots, deterministic_in_seed) {
  const ShotRecord a = sample_shots(ut::werner(0.6), 4, 5000, 11);
  const ShotRecord b = sample_shots(ut::werner(0.6), 4, 5000, 11);
  const ShotRecord c = sample_shots(ut::werner(0.6), 4, 5000, 12);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
}

TEST(sample_shots, rejects_zero_shots) { EXPECT_THROW(sample_shots(ut::singlet(), 2, 0, 1), std::invalid_argument); }

TEST(estimate, plug_in_from_pseudo_counts) {
  // Counts chosen so the signed means are exactly the singlet moments.
  const std::vector<ShotRecord> recs{record(2, 3, 0, 0, 1), record(3, 5, 2, 1, 0), record(4, 5, 2, 1, 0)};
  const WitnessEstimate e = estimate(recs, 0);
  EXPECT_DOUBLE_EQ(e.pi2_hat, 1.0);
  EXPECT_DOUBLE_EQ(e.pi3_hat, 0.25);
  EXPECT_DOUBLE_EQ(e.pi4_hat, 0.25);
  EXPECT_NEAR(e.witness_hat, -1.0 / 16, 1e-17);
  EXPECT_EQ(e.ci_low, e.witness_hat);
  EXPECT_EQ(e.shots_per_moment[1], 8U);
}

TEST(estimate, record_order_does_not_matter) {
  const std::vector<ShotRecord> a{record(2, 30, 5, 5, 10), record(3, 20, 10, 10, 20), record(4, 15, 20, 5, 10)};
  const std::vector<ShotRecord> b{a[2], a[0], a[1]};
  const WitnessEstimate ea = estimate(a, 200, 9);
  const WitnessEstimate eb = estimate(b, 200, 9);
  EXPECT_EQ(ea.witness_hat, eb.witness_hat);
  EXPECT_EQ(ea.ci_low, eb.ci_low);
  EXPECT_EQ(ea.ci_high, eb.ci_high);
}

TEST(estimate, input_errors) {
  const ShotRecord r2 = record(2, 1, 1, 1, 1);
  const ShotRecord r3 = record(3, 1, 1, 1, 1);
  const ShotRecord r4 = record(4, 1, 1, 1, 1);
  EXPECT_THROW(estimate(std::vector<ShotRecord>{r2, r3}), std::invalid_argument);
  EXPECT_THROW(estimate(std::vector<ShotRecord>{r2, r3, r3}), std::invalid_argument);
  ShotRecord bad = r4;
  bad.shots = 5;
  EXPECT_THROW(estimate(std::vector<ShotRecord>{r2, r3, bad}), std::invalid_argument);
  ShotRecord empty = record(4, 0, 0, 0, 0);
  EXPECT_THROW(estimate(std::vector<ShotRecord>{r2, r3, empty}), std::invalid_argument);
  ShotRecord five = r4;
  five.n_copies = 5;
  EXPECT_THROW(estimate(std::vector<ShotRecord>{r2, r3, five}), std::invalid_argument);
}

TEST(simulate_witness, interval_covers_truth_at_high_shots) {
  const DensityMatrix rho = ut::werner(0.8);
  const double truth = witness_value(moments_direct(rho));
  const WitnessEstimate e = simulate_witness(rho, {1000000, 1000000, 1000000}, 42);
  EXPECT_TRUE(e.covers(truth)) << e.ci_low << " " << truth << " " << e.ci_high;
  EXPECT_LT(e.ci_low, e.ci_high);
  EXPECT_NEAR(e.witness_hat, truth, 5 * e.witness_se);
}

TEST(simulate_witness, spread_shrinks_as_inverse_root_shots) {
  const DensityMatrix rho = ut::werner(0.8);
  const WitnessEstimate lo = simulate_witness(rho, {50000, 50000, 50000}, 5);
  const WitnessEstimate hi = simulate_witness(rho, {200000, 200000, 200000}, 5);
  const double ratio = lo.witness_se / hi.witness_se;
  EXPECT_GT(ratio, 1.7);
  EXPECT_LT(ratio, 2.3);
  const double width_ratio = (lo.ci_high - lo.ci_low) / (hi.ci_high - hi.ci_low);
  EXPECT_GT(width_ratio, 1.6);
  EXPECT_LT(width_ratio, 2.4);
}

TEST(simulate_witness, moment_estimates_are_unbiased) {
  constexpr int kRuns = 1000;
  const DensityMatrix rho = ut::werner(0.6);
  const MomentSet truth = moments_direct(rho);
  std::array<double, 3> sum{};
  std::array<double, 3> sum2{};
  for (int s = 0; s < kRuns; ++s) {
    const WitnessEstimate e = simulate_witness(rho, {2000, 2000, 2000}, static_cast<std::uint64_t>(s), 0);
    const MomentSet m = e.moments();
    for (int n = 2; n <= 4; ++n) {
      sum[n - 2] += m[n];
      sum2[n - 2] += m[n] * m[n];
    }
  }
  for (int n = 2; n <= 4; ++n) {
    const double mean = sum[n - 2] / kRuns;
    const double se = std::sqrt((sum2[n - 2] / kRuns - mean * mean) / kRuns);
    EXPECT_NEAR(mean, truth[n], 5 * se) << n;
  }
}

TEST(simulate_witness, deterministic_in_seed) {
  const DensityMatrix rho = ut::werner(0.7);
  const WitnessEstimate a = simulate_witness(rho, {3000, 3000, 3000}, 77, 100);
  const WitnessEstimate b = simulate_witness(rho, {3000, 3000, 3000}, 77, 100);
  EXPECT_EQ(a.witness_hat, b.witness_hat);
  EXPECT_EQ(a.ci_low, b.ci_low);
  EXPECT_EQ(a.ci_high, b.ci_high);
  EXPECT_NE(a.witness_hat, simulate_witness(rho, {3000, 3000, 3000}, 78, 100).witness_hat);
}

TEST(simulate_witness, rejects_zero_shots) {
  EXPECT_THROW(simulate_witness(ut::singlet(), {10, 0, 10}, 1), std::invalid_argument);
}
