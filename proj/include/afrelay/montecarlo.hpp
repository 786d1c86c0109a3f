// SPDX-License-Identifier: Apache-2.0
//
// afrelay: outage analysis of dual-hop multi-antenna AF relaying with interference
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef AFRELAY_MONTECARLO_HPP
#define AFRELAY_MONTECARLO_HPP

// Seeded outage simulation. Work is split into fixed-size chunks; chunk i draws
// from its own generator seeded with substream_seed(seed, i), so the result is
// the same for any thread count.

#include "afrelay/model.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace afrelay::mc {

enum class Sampler { Vector, Equivalent };

struct McEstimate {
    double p_hat = 0.0;
    std::int64_t n_samples = 0;
    std::int64_t n_outage = 0;
    /// 1.96 sqrt(p(1-p)/n); 0 when p is 0 or 1.
    double ci_half_width_95 = 0.0;
    std::uint64_t seed = 0;
    /// False when n_outage < 10, where the normal approximation is unreliable.
    bool ci_reliable = true;
};

struct McOptions {
    std::int64_t chunk_size = 1 << 16;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

inline constexpr std::int64_t kDefaultSamples = 10'000'000;
inline constexpr std::int64_t kMinSamples = 1'000;

/// splitmix64 finaliser applied to seed + (chunk + 1) * golden-ratio increment.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t chunk);

/// Fraction of samples with SINR < gamma_th. Throws std::invalid_argument for
/// n_samples < kMinSamples or an invalid configuration.
McEstimate estimate_outage(const SystemConfig &cfg, std::int64_t n_samples, std::uint64_t seed,
                           Sampler sampler = Sampler::Vector, const McOptions &opt = {});

using DrawFn = std::function<double(Rng &)>;

/// F(x) = #(U <= x) / n for every x in xs (ascending), from one pass over the
/// samples. draw must be safe to call concurrently with distinct generators.
/// Throws std::invalid_argument for unsorted xs or n_samples < 1.
std::vector<double> empirical_cdf(const DrawFn &draw, std::span<const double> xs, std::int64_t n_samples,
                                  std::uint64_t seed, const McOptions &opt = {});

/// Negative least-squares slope of log10(outage) against log10(rho1).
/// Throws std::invalid_argument for fewer than two points, non-positive values
/// or duplicate rho1.
double diversity_slope(std::span<const std::pair<double, double>> points);

} // namespace afrelay::mc

#endif
