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

#include "afrelay/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace afrelay::mc {

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t chunk)
{
    std::uint64_t z = seed + (chunk + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// Runs body(chunk_index, chunk_len, rng) over all chunks on a small pool.
// Each chunk writes only to its own slot, so no ordering matters.
template <class Body>
void for_each_chunk(std::int64_t n_samples, std::uint64_t seed, const McOptions &opt, Body &&body)
{
    const std::int64_t chunk = std::max<std::int64_t>(1, opt.chunk_size);
    const std::int64_t n_chunks = (n_samples + chunk - 1) / chunk;
    unsigned threads = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::int64_t>(threads, n_chunks));

    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::int64_t c = next++; c < n_chunks; c = next++) {
                const std::int64_t len = std::min(chunk, n_samples - c * chunk);
                Rng rng(substream_seed(seed, static_cast<std::uint64_t>(c)));
                body(c, len, rng);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = n_chunks;
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::int64_t n_chunks_for(std::int64_t n, const McOptions &opt)
{
    const std::int64_t chunk = std::max<std::int64_t>(1, opt.chunk_size);
    return (n + chunk - 1) / chunk;
}

} // namespace

McEstimate estimate_outage(const SystemConfig &cfg_in, std::int64_t n_samples, std::uint64_t seed, Sampler sampler,
                           const McOptions &opt)
{
    if (n_samples < kMinSamples) {
        throw std::invalid_argument("estimate_outage: n_samples must be >= " + std::to_string(kMinSamples));
    }
    cfg_in.validate();
    const SystemConfig cfg = cfg_in.canonical();

    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_chunks_for(n_samples, opt)), 0);
    for_each_chunk(n_samples, seed, opt, [&](std::int64_t c, std::int64_t len, Rng &rng) {
        std::int64_t hits = 0;
        for (std::int64_t i = 0; i < len; ++i) {
            const double g = sampler == Sampler::Vector ? sample_sinr_vector(cfg, rng) : sample_sinr_equivalent(cfg, rng);
            if (g < cfg.gamma_th) {
                ++hits;
            }
        }
        counts[static_cast<std::size_t>(c)] = hits;
    });

    McEstimate est;
    est.n_samples = n_samples;
    est.seed = seed;
    for (auto h : counts) {
        est.n_outage += h;
    }
    est.p_hat = static_cast<double>(est.n_outage) / static_cast<double>(n_samples);
    est.ci_half_width_95 = 1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_samples));
    est.ci_reliable = est.n_outage >= 10;
    return est;
}

std::vector<double> empirical_cdf(const DrawFn &draw, std::span<const double> xs, std::int64_t n_samples,
                                  std::uint64_t seed, const McOptions &opt)
{
    if (!std::is_sorted(xs.begin(), xs.end())) {
        throw std::invalid_argument("empirical_cdf: xs must be sorted ascending");
    }
    if (n_samples < 1) {
        throw std::invalid_argument("empirical_cdf: n_samples must be >= 1");
    }
    const std::size_t nx = xs.size();
    // bins[c][i] counts samples whose first grid point at or above them is xs[i];
    // bin nx collects samples above every grid point.
    std::vector<std::vector<std::int64_t>> bins(static_cast<std::size_t>(n_chunks_for(n_samples, opt)));
    for_each_chunk(n_samples, seed, opt, [&](std::int64_t c, std::int64_t len, Rng &rng) {
        std::vector<std::int64_t> local(nx + 1, 0);
        for (std::int64_t i = 0; i < len; ++i) {
            const double u = draw(rng);
            const auto it = std::lower_bound(xs.begin(), xs.end(), u);
            ++local[static_cast<std::size_t>(it - xs.begin())];
        }
        bins[static_cast<std::size_t>(c)] = std::move(local);
    });

    std::vector<std::int64_t> total(nx + 1, 0);
    for (const auto &b : bins) {
        for (std::size_t i = 0; i <= nx; ++i) {
            total[i] += b[i];
        }
    }
    std::vector<double> out(nx);
    std::int64_t run = 0;
    for (std::size_t i = 0; i < nx; ++i) {
        run += total[i];
        out[i] = static_cast<double>(run) / static_cast<double>(n_samples);
    }
    return out;
}

double diversity_slope(std::span<const std::pair<double, double>> points)
{
    if (points.size() < 2) {
        throw std::invalid_argument("diversity_slope: need at least two points");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (const auto &[rho, p] : points) {
        if (!(rho > 0) || !(p > 0) || !std::isfinite(rho) || !std::isfinite(p)) {
            throw std::invalid_argument("diversity_slope: rho1 and outage must be finite and > 0");
        }
        lx.push_back(std::log10(rho));
        ly.push_back(std::log10(p));
    }
    auto sorted = lx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("diversity_slope: duplicate rho1 values");
    }
    const double n = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return -sxy / sxx;
}

} // namespace afrelay::mc
