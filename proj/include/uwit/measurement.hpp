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

#ifndef UWIT_MEASUREMENT_HPP
#define UWIT_MEASUREMENT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/random/binomial_distribution.hpp>

#include "uwit/collective.hpp"
#include "uwit/random.hpp"
#include "uwit/states.hpp"
#include "uwit/witness.hpp"

namespace uwit {

/// Outcome counts of `shots` runs of the sequential measurement on n copies.
/// counts[first][second], 0 = '+', 1 = '-', as in OutcomeTable.
struct ShotRecord {
  int n_copies = 2;
  std::uint64_t shots = 0;
  std::array<std::array<std::uint64_t, 2>, 2> counts{};
  std::uint64_t seed = 0;

  std::uint64_t total() const noexcept { return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1]; }

  /// (c++ - c+- - c-+ + c--) / shots
  double signed_mean() const {
    if (shots == 0) throw std::invalid_argument("ShotRecord: zero shots");
    const double plus = static_cast<double>(counts[0][0]) + static_cast<double>(counts[1][1]);
    const double minus = static_cast<double>(counts[0][1]) + static_cast<double>(counts[1][0]);
    return (plus - minus) / static_cast<double>(shots);
  }
};

/// Draws `shots` outcomes by inverse CDF over (++, +-, -+, --).
inline ShotRecord sample_shots(const OutcomeTable& table, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample_shots: shots must be at least 1");
  const double total = table.total();
  const std::array<double, 3> cdf{table.pp() / total, (table.pp() + table.pm()) / total,
                                  (table.pp() + table.pm() + table.mp()) / total};
  ShotRecord rec;
  rec.n_copies = table.n_copies;
  rec.shots = shots;
  rec.seed = seed;
  Rng rng(seed);
  std::array<std::uint64_t, 4> c{};
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = rng.uniform();
    const std::size_t idx = u < cdf[0] ? 0 : u < cdf[1] ? 1 : u < cdf[2] ? 2 : 3;
    ++c[idx];
  }
  rec.counts = {{{c[0], c[1]}, {c[2], c[3]}}};
  return rec;
}

inline ShotRecord sample_shots(const DensityMatrix& rho, int n, std::uint64_t shots, std::uint64_t seed) {
  return sample_shots(outcome_probabilities(rho, n), shots, seed);
}

struct WitnessEstimate {
  double pi2_hat = 0.0;
  double pi3_hat = 0.0;
  double pi4_hat = 0.0;
  double witness_hat = 0.0;
  /// 95% percentile bootstrap interval for the witness.
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Bootstrap standard deviation of the witness.
  double witness_se = 0.0;
  std::array<std::uint64_t, 3> shots_per_moment{};
  std::size_t bootstrap_resamples = 0;

  MomentSet moments() const { return {pi2_hat, pi3_hat, pi4_hat, MomentSource::kCollective}; }
  bool covers(double value) const noexcept { return ci_low <= value && value <= ci_high; }
};

inline constexpr std::size_t kDefaultBootstrapResamples = 1000;

namespace detail {

/// Linear-interpolation quantile of sorted data.
inline double quantile_sorted(const std::vector<double>& v, double q) {
  if (v.empty()) return 0.0;
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

/// Multinomial draw by successive conditional binomials.
inline std::array<std::uint64_t, 4> resample_counts(Rng& rng, std::uint64_t shots, const std::array<double, 4>& prob) {
  std::array<std::uint64_t, 4> out{};
  std::uint64_t remaining = shots;
  double mass = 1.0;
  for (std::size_t k = 0; k < 3 && remaining > 0; ++k) {
    const double q = mass > 0.0 ? std::clamp(prob[k] / mass, 0.0, 1.0) : 0.0;
    boost::random::binomial_distribution<std::int64_t, double> bin(static_cast<std::int64_t>(remaining), q);
    out[k] = static_cast<std::uint64_t>(bin(rng));
    remaining -= out[k];
    mass -= prob[k];
  }
  out[3] = remaining;
  return out;
}

}  // namespace detail

/// Plug-in estimate of the witness from one record per n in {2, 3, 4}, with a
/// multinomial-bootstrap 95% interval.
///
/// Moments are signed count averages; the witness substitutes them into the
/// moment polynomial. The bootstrap stream is seeded from `bootstrap_seed`,
/// or from the record seeds when absent, so the result is a pure function of
/// its inputs.
inline WitnessEstimate estimate(std::span<const ShotRecord> records,
                                std::size_t bootstrap_resamples = kDefaultBootstrapResamples,
                                std::optional<std::uint64_t> bootstrap_seed = std::nullopt) {
  std::array<const ShotRecord*, 3> by_n{};
  for (const ShotRecord& r : records) {
    if (r.n_copies < 2 || r.n_copies > 4) throw std::invalid_argument("estimate: record with n outside {2,3,4}");
    auto& slot = by_n[static_cast<std::size_t>(r.n_copies - 2)];
    if (slot) throw std::invalid_argument("estimate: duplicate record for n = " + std::to_string(r.n_copies));
    if (r.shots == 0) throw std::invalid_argument("estimate: zero shots for n = " + std::to_string(r.n_copies));
    if (r.total() != r.shots) throw std::invalid_argument("estimate: counts do not sum to shots");
    slot = &r;
  }
  for (std::size_t k = 0; k < 3; ++k)
    if (!by_n[k]) throw std::invalid_argument("estimate: missing record for n = " + std::to_string(k + 2));

  WitnessEstimate est;
  est.pi2_hat = by_n[0]->signed_mean();
  est.pi3_hat = by_n[1]->signed_mean();
  est.pi4_hat = by_n[2]->signed_mean();
  est.witness_hat = witness_value(est.moments());
  est.bootstrap_resamples = bootstrap_resamples;
  for (std::size_t k = 0; k < 3; ++k) est.shots_per_moment[k] = by_n[k]->shots;

  if (bootstrap_resamples == 0) {
    est.ci_low = est.ci_high = est.witness_hat;
    return est;
  }

  std::uint64_t seed = bootstrap_seed.value_or(
      derive_seed(by_n[0]->seed ^ splitmix64(by_n[1]->seed) ^ splitmix64(splitmix64(by_n[2]->seed)), 0xB007));
  Rng rng(seed);
  std::array<std::array<double, 4>, 3> prob{};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& c = by_n[k]->counts;
    const double s = static_cast<double>(by_n[k]->shots);
    prob[k] = {c[0][0] / s, c[0][1] / s, c[1][0] / s, c[1][1] / s};
  }
  std::vector<double> draws;
  draws.reserve(bootstrap_resamples);
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::size_t b = 0; b < bootstrap_resamples; ++b) {
    std::array<double, 3> pi{};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto c = detail::resample_counts(rng, by_n[k]->shots, prob[k]);
      pi[k] = (static_cast<double>(c[0]) - static_cast<double>(c[1]) - static_cast<double>(c[2]) +
               static_cast<double>(c[3])) /
              static_cast<double>(by_n[k]->shots);
    }
    const double wv = witness_value({pi[0], pi[1], pi[2], MomentSource::kCollective});
    draws.push_back(wv);
    sum += wv;
    sum2 += wv * wv;
  }
  std::sort(draws.begin(), draws.end());
  est.ci_low = detail::quantile_sorted(draws, 0.025);
  est.ci_high = detail::quantile_sorted(draws, 0.975);
  const double nb = static_cast<double>(bootstrap_resamples);
  est.witness_se = std::sqrt(std::max(0.0, sum2 / nb - (sum / nb) * (sum / nb)));
  return est;
}

/// Samples one record per moment order from `rho` and estimates the witness.
/// Stream seeds are derive_seed(seed, n).
inline WitnessEstimate simulate_witness(const DensityMatrix& rho, const std::array<std::uint64_t, 3>& shots,
                                        std::uint64_t seed,
                                        std::size_t bootstrap_resamples = kDefaultBootstrapResamples) {
  std::array<ShotRecord, 3> recs;
  for (int n = 2; n <= 4; ++n) {
    recs[static_cast<std::size_t>(n - 2)] =
        sample_shots(rho, n, shots[static_cast<std::size_t>(n - 2)], derive_seed(seed, static_cast<std::uint64_t>(n)));
  }
  return estimate(recs, bootstrap_resamples, derive_seed(seed, 0xB007));
}

}  // namespace uwit

#endif  // UWIT_MEASUREMENT_HPP
