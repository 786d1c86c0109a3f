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
#include "afrelay/model.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

using namespace afrelay;

namespace {

std::vector<SystemConfig> all_systems(int n, double rho, double rho_i)
{
    std::vector<SystemConfig> out;
    for (auto t : {Topology::N11, Topology::OneOneN, Topology::OneNOne}) {
        for (auto s : {Scheme::FixedGain, Scheme::VariableGain}) {
            out.push_back({t, s, false, n, rho, rho, rho_i, 1.0});
            if (t == Topology::OneNOne && s == Scheme::VariableGain) {
                out.push_back({t, s, true, n, rho, rho, rho_i, 1.0});
            }
        }
    }
    return out;
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) {
            ++i;
        }
        while (j < b.size() && b[j] <= x) {
            ++j;
        }
        d = std::max(d, std::fabs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

} // namespace

TEST_SUITE("model")
{
    TEST_CASE("parsing and names round-trip")
    {
        for (auto t : {Topology::N11, Topology::OneOneN, Topology::OneNOne}) {
            CHECK(parse_topology(to_string(t)) == t);
        }
        for (auto s : {Scheme::FixedGain, Scheme::VariableGain}) {
            CHECK(parse_scheme(to_string(s)) == s);
        }
        CHECK_THROWS_AS(parse_topology("2x2"), std::invalid_argument);
        CHECK_THROWS_AS(parse_scheme("adaptive"), std::invalid_argument);
    }

    TEST_CASE("validation")
    {
        SystemConfig c;
        CHECK_NOTHROW(c.validate());
        c.n_antennas = 0;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c.n_antennas = 65;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c = {};
        c.rho1 = 0.0;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c = {};
        c.rho2 = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c = {};
        c.rho_i = -1.0;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        c.rho_i = 0.0;
        CHECK_NOTHROW(c.validate());
        c.gamma_th = 0.0;
        CHECK_THROWS_AS(c.validate(), std::invalid_argument);
        CHECK_THROWS_AS((AsymptoticQuery{0.0, 1.0}).validate(), std::invalid_argument);
        CHECK_THROWS_AS((AsymptoticQuery{1.0, -1.0}).validate(), std::invalid_argument);
    }

    TEST_CASE("ici flag is canonical only where it means something")
    {
        SystemConfig c{Topology::N11, Scheme::VariableGain, true, 2, 1, 1, 1, 1};
        CHECK_FALSE(c.canonical().ici_at_relay);
        c.topology = Topology::OneNOne;
        CHECK(c.canonical().ici_at_relay);
        c.scheme = Scheme::FixedGain;
        CHECK_FALSE(c.canonical().ici_at_relay);
    }

    TEST_CASE("draw sizes per topology")
    {
        Rng rng(3);
        SystemConfig c{Topology::N11, Scheme::FixedGain, false, 3, 1, 1, 1, 1};
        auto d = draw_channels(c, rng);
        CHECK(d.h1.size() == 3);
        CHECK(d.h2.size() == 1);
        c.topology = Topology::OneOneN;
        d = draw_channels(c, rng);
        CHECK(d.h2.size() == 3);
        c.topology = Topology::OneNOne;
        d = draw_channels(c, rng);
        CHECK((d.h1.size() == 3 && d.h2.size() == 3 && d.h_i.size() == 3));
    }

    TEST_CASE("zero interference power removes the interference term")
    {
        Rng rng(11);
        for (auto c : all_systems(3, 5.0, 0.0)) {
            for (int i = 0; i < 200; ++i) {
                auto d = draw_channels(c, rng);
                const double with = sinr_from_channels(c, d);
                std::fill(d.h_i.begin(), d.h_i.end(), cplx{0.0, 0.0});
                CHECK(sinr_from_channels(c, d) == with);
            }
        }
    }

    TEST_CASE("vector and scalar SINR coincide on coupled draws")
    {
        Rng rng(12);
        for (int n : {1, 2, 4}) {
            for (auto c : all_systems(n, 7.0, 2.0)) {
                c.rho2 = 3.0;
                double worst = 0.0;
                for (int i = 0; i < 500; ++i) {
                    const auto d = draw_channels(c, rng);
                    const double a = sinr_from_channels(c, d);
                    worst = std::max(worst, std::fabs(a - sinr_equivalent(c, reduce(c, d))) / a);
                }
                CAPTURE(describe(c));
                CHECK(worst < 1e-12);
            }
        }
    }

    TEST_CASE("N11 variable gain, N = 1: scalar form")
    {
        const SystemConfig c{Topology::N11, Scheme::VariableGain, false, 1, 4.0, 9.0, 2.0, 1.0};
        const EquivalentDraw d{0.7, 1.3, 0.4};
        const double a = 4.0 * 0.7;
        const double b = 9.0 * 1.3;
        CHECK(sinr_equivalent(c, d) == doctest::Approx(a * b / ((2.0 * 0.4 + 1) * (b + 1) + a)).epsilon(1e-15));
    }

    TEST_CASE("variable-gain SINR never exceeds either hop")
    {
        Rng rng(13);
        for (int n : {1, 3}) {
            for (auto c : all_systems(n, 10.0, 1.5)) {
                if (c.scheme != Scheme::VariableGain || (c.topology == Topology::OneNOne && !c.ici_at_relay)) {
                    continue;
                }
                for (int i = 0; i < 2000; ++i) {
                    const auto d = draw_equivalent(c, rng);
                    const auto h = hop_sinr(c, d);
                    CHECK(sinr_equivalent(c, d) <= std::min(h.first, h.second));
                }
            }
        }
    }

    TEST_CASE("samplers agree in distribution (two-sample KS at 1%)")
    {
        const int n_draws = 100'000;
        const double crit = 1.628 * std::sqrt(2.0 / n_draws);
        Rng rng(21);
        for (int n : {1, 2, 4}) {
            for (double rho : {1.0, 10.0, 100.0}) {
                for (auto c : all_systems(n, rho, 1.0)) {
                    std::vector<double> a(n_draws);
                    std::vector<double> b(n_draws);
                    for (int i = 0; i < n_draws; ++i) {
                        a[i] = sample_sinr_vector(c, rng);
                        b[i] = sample_sinr_equivalent(c, rng);
                    }
                    CAPTURE(describe(c));
                    CHECK(ks_statistic(a, b) < crit);
                }
            }
        }
    }

    TEST_CASE("1-N-1 fixed gain, N = 2: empirical CDF at the threshold")
    {
        const SystemConfig c{Topology::OneNOne, Scheme::FixedGain, false, 2, 10.0, 10.0, 1.0, 1.0};
        const double p = outage_exact(c).probability;
        Rng rng(31);
        const int n = 1'000'000;
        int hits = 0;
        for (int i = 0; i < n; ++i) {
            hits += sample_sinr_vector(c, rng) < c.gamma_th ? 1 : 0;
        }
        CHECK(std::fabs(static_cast<double>(hits) / n - p) < 3.0 * oracle::binomial_sigma(p, n));
    }

    TEST_CASE("vanishing first-hop SNR drives the SINR to zero")
    {
        Rng rng(41);
        for (auto c : all_systems(2, 1.0, 1.0)) {
            c.rho1 = 1e-8;
            std::vector<double> v(2001);
            for (auto &x : v) {
                x = sample_sinr_vector(c, rng);
            }
            std::nth_element(v.begin(), v.begin() + 1000, v.end());
            CHECK(v[1000] < 1e-6);
        }
    }

    TEST_CASE("channel normalization and independence")
    {
        const SystemConfig c{Topology::OneNOne, Scheme::FixedGain, false, 4, 1, 1, 1, 1};
        Rng rng(51);
        const int n = 1'000'000;
        double s = 0.0;
        double s2 = 0.0;
        cplx x12{0.0, 0.0};
        cplx x1i{0.0, 0.0};
        for (int i = 0; i < n; ++i) {
            const auto d = draw_channels(c, rng);
            double g = 0.0;
            for (const auto &e : d.h1) {
                g += std::norm(e);
            }
            s += g;
            s2 += g * g;
            x12 += d.h1[0] * std::conj(d.h2[0]);
            x1i += d.h1[1] * std::conj(d.h_i[1]);
        }
        const double mean = s / n;
        const double sd = std::sqrt((s2 / n - mean * mean) / n);
        CHECK(std::fabs(mean - 4.0) < 3.0 * sd);
        // Each cross product has unit variance, so the mean has sd 1/sqrt(n).
        CHECK(std::abs(x12) / n < 4.0 / std::sqrt(static_cast<double>(n)));
        CHECK(std::abs(x1i) / n < 4.0 / std::sqrt(static_cast<double>(n)));
    }
}
