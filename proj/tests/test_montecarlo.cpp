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

#include "afrelay/analytic.hpp"
#include "afrelay/montecarlo.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

using namespace afrelay;

TEST_SUITE("montecarlo")
{
    TEST_CASE("interference-free N-1-1 against the closed form")
    {
        const SystemConfig c{Topology::N11, Scheme::FixedGain, false, 1, 10, 10, 0.0, 1.0};
        const double p = outage_exact(c).probability;
        const auto est = mc::estimate_outage(c, 1'000'000, 42);
        CHECK(std::fabs(est.p_hat - p) < 4.0 * oracle::binomial_sigma(p, 1'000'000));
    }

    TEST_CASE("both samplers estimate the same outage")
    {
        const SystemConfig c{Topology::OneNOne, Scheme::VariableGain, true, 2, 10, 10, 1.0, 1.0};
        const double p = outage_exact(c).probability;
        for (auto s : {mc::Sampler::Vector, mc::Sampler::Equivalent}) {
            const auto est = mc::estimate_outage(c, 2'000'000, 43, s);
            CHECK(std::fabs(est.p_hat - p) < 4.0 * oracle::binomial_sigma(p, 2'000'000));
        }
    }

    TEST_CASE("tiny threshold gives no outages")
    {
        const SystemConfig c{Topology::N11, Scheme::VariableGain, false, 2, 10, 10, 1.0, 1e-12};
        const auto est = mc::estimate_outage(c, 100'000, 1);
        CHECK(est.n_outage == 0);
        CHECK(est.p_hat == 0.0);
        CHECK(est.ci_half_width_95 == 0.0);
        CHECK_FALSE(est.ci_reliable);
    }

    TEST_CASE("estimate fields")
    {
        const SystemConfig c{Topology::OneOneN, Scheme::FixedGain, false, 2, 10, 10, 1.0, 1.0};
        const auto e = mc::estimate_outage(c, 12'345, 77);
        CHECK(e.n_samples == 12'345);
        CHECK(e.seed == 77);
        CHECK(e.p_hat == static_cast<double>(e.n_outage) / 12'345.0);
        CHECK(e.ci_half_width_95 == doctest::Approx(1.96 * std::sqrt(e.p_hat * (1 - e.p_hat) / 12'345.0)));
        CHECK(e.ci_reliable);
        CHECK_THROWS_AS(mc::estimate_outage(c, 999, 1), std::invalid_argument);
        SystemConfig bad = c;
        bad.rho1 = -1;
        CHECK_THROWS_AS(mc::estimate_outage(bad, 10'000, 1), std::invalid_argument);
    }

    TEST_CASE("reproducible for any thread count")
    {
        const SystemConfig c{Topology::OneNOne, Scheme::FixedGain, false, 3, 10, 10, 1.0, 1.0};
        const auto a = mc::estimate_outage(c, 300'000, 5, mc::Sampler::Vector, {.chunk_size = 4096, .threads = 1});
        const auto b = mc::estimate_outage(c, 300'000, 5, mc::Sampler::Vector, {.chunk_size = 4096, .threads = 7});
        const auto d = mc::estimate_outage(c, 300'000, 5, mc::Sampler::Vector, {.chunk_size = 4096, .threads = 0});
        CHECK(a.n_outage == b.n_outage);
        CHECK(a.n_outage == d.n_outage);
        CHECK(a.p_hat == b.p_hat);
        const auto e = mc::estimate_outage(c, 300'000, 6, mc::Sampler::Vector, {.chunk_size = 4096, .threads = 1});
        CHECK(e.n_outage != a.n_outage);
    }

    TEST_CASE("substreams are distinct")
    {
        std::set<std::uint64_t> seen;
        for (std::uint64_t s : {0ULL, 1ULL, 2ULL}) {
            for (std::uint64_t c = 0; c < 1000; ++c) {
                seen.insert(mc::substream_seed(s, c));
            }
        }
        CHECK(seen.size() == 3000);
        CHECK(mc::substream_seed(9, 4) == mc::substream_seed(9, 4));
    }

    TEST_CASE("95% intervals cover the exact value")
    {
        const SystemConfig c{Topology::N11, Scheme::FixedGain, false, 2, 10, 10, 1.0, 1.0};
        const double p = outage_exact(c).probability;
        int covered = 0;
        for (int rep = 0; rep < 200; ++rep) {
            const auto e = mc::estimate_outage(c, 10'000, 1000 + static_cast<std::uint64_t>(rep));
            covered += std::fabs(e.p_hat - p) <= e.ci_half_width_95 ? 1 : 0;
        }
        CHECK(covered >= 180);
    }

    TEST_CASE("empirical CDF")
    {
        const std::vector<double> xs{0.5, 1.0, 2.0, 2.0, 3.0};
        const auto f = mc::empirical_cdf([](Rng &) { return 2.0; }, xs, 1000, 1);
        CHECK(f == std::vector<double>{0.0, 0.0, 1.0, 1.0, 1.0});

        const std::vector<double> med{std::log(2.0)};
        const auto g = mc::empirical_cdf(
            [](Rng &r) { return std::exponential_distribution<double>(1.0)(r); }, med, 1'000'000, 2);
        CHECK(std::fabs(g[0] - 0.5) < 4.0 * oracle::binomial_sigma(0.5, 1'000'000));

        const std::vector<double> unsorted{1.0, 0.5};
        CHECK_THROWS_AS(mc::empirical_cdf([](Rng &) { return 0.0; }, unsorted, 10, 1), std::invalid_argument);
        const auto again = mc::empirical_cdf(
            [](Rng &r) { return std::exponential_distribution<double>(1.0)(r); }, med, 1'000'000, 2);
        CHECK(again == g);
    }

    TEST_CASE("empirical CDF is nondecreasing")
    {
        std::vector<double> xs;
        for (int i = 0; i < 40; ++i) {
            xs.push_back(-2.0 + 0.1 * i);
        }
        const auto f = mc::empirical_cdf(
            [](Rng &r) { return std::normal_distribution<double>(0.0, 1.0)(r); }, xs, 100'000, 3);
        for (std::size_t i = 1; i < f.size(); ++i) {
            CHECK(f[i] >= f[i - 1]);
        }
    }

    TEST_CASE("diversity slope")
    {
        std::vector<std::pair<double, double>> one;
        std::vector<std::pair<double, double>> two;
        for (double r : {1e3, 1e4, 1e5}) {
            one.emplace_back(r, 3.0 / r);
            two.emplace_back(r, 3.0 / (r * r));
        }
        CHECK(std::fabs(mc::diversity_slope(one) - 1.0) < 1e-12);
        CHECK(std::fabs(mc::diversity_slope(two) - 2.0) < 1e-12);

        std::vector<std::pair<double, double>> pts;
        for (double r : {1e3, 1e4, 1e5}) {
            pts.emplace_back(r, outage_exact({Topology::OneNOne, Scheme::VariableGain, true, 2, r, r, 1.0, 1.0})
                                    .probability);
        }
        const double s = mc::diversity_slope(pts);
        CHECK(s >= 1.8);
        CHECK(s <= 2.2);

        const std::vector<std::pair<double, double>> single{{1.0, 0.1}};
        const std::vector<std::pair<double, double>> zero{{1.0, 0.1}, {10.0, 0.0}};
        const std::vector<std::pair<double, double>> dup{{1.0, 0.1}, {1.0, 0.2}};
        CHECK_THROWS_AS(mc::diversity_slope(single), std::invalid_argument);
        CHECK_THROWS_AS(mc::diversity_slope(zero), std::invalid_argument);
        CHECK_THROWS_AS(mc::diversity_slope(dup), std::invalid_argument);
    }
}
