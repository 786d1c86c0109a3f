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

#include "afrelay/model.hpp"

#include "afrelay/specfun.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace afrelay {

std::string_view to_string(Topology t)
{
    switch (t) {
    case Topology::N11: return "n11";
    case Topology::OneOneN: return "11n";
    case Topology::OneNOne: return "1n1";
    }
    return "?";
}

std::string_view to_string(Scheme s)
{
    return s == Scheme::FixedGain ? "fixed" : "variable";
}

Topology parse_topology(std::string_view s)
{
    if (s == "n11" || s == "N11" || s == "N-1-1") return Topology::N11;
    if (s == "11n" || s == "1-1-N" || s == "11N") return Topology::OneOneN;
    if (s == "1n1" || s == "1-N-1" || s == "1N1") return Topology::OneNOne;
    throw std::invalid_argument("unknown topology '" + std::string(s) + "' (expected n11, 11n or 1n1)");
}

Scheme parse_scheme(std::string_view s)
{
    if (s == "fixed") return Scheme::FixedGain;
    if (s == "variable") return Scheme::VariableGain;
    throw std::invalid_argument("unknown scheme '" + std::string(s) + "' (expected fixed or variable)");
}

void SystemConfig::validate() const
{
    if (n_antennas < 1 || n_antennas > specfun::kMaxAntennas) {
        throw std::invalid_argument("n_antennas must be in [1, " + std::to_string(specfun::kMaxAntennas) + "]");
    }
    auto positive = [](double v, const char *name) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::invalid_argument(std::string(name) + " must be finite and > 0");
        }
    };
    positive(rho1, "rho1");
    positive(rho2, "rho2");
    positive(gamma_th, "gamma_th");
    if (!std::isfinite(rho_i) || rho_i < 0.0) {
        throw std::invalid_argument("rho_i must be finite and >= 0");
    }
}

SystemConfig SystemConfig::canonical() const
{
    SystemConfig c = *this;
    if (!(topology == Topology::OneNOne && scheme == Scheme::VariableGain)) {
        c.ici_at_relay = false;
    }
    return c;
}

void AsymptoticQuery::validate() const
{
    if (!std::isfinite(mu) || mu <= 0.0 || !std::isfinite(rho1) || rho1 <= 0.0) {
        throw std::invalid_argument("asymptotic query: mu and rho1 must be finite and > 0");
    }
}

std::string describe(const SystemConfig &cfg)
{
    std::ostringstream os;
    os << to_string(cfg.topology) << '/' << to_string(cfg.scheme);
    if (cfg.canonical().ici_at_relay) {
        os << "+ici";
    }
    os << " N=" << cfg.n_antennas << " rho1=" << cfg.rho1 << " rho2=" << cfg.rho2 << " rho_i=" << cfg.rho_i
       << " gamma_th=" << cfg.gamma_th;
    return os.str();
}

std::pair<int, int> equivalent_shapes(const SystemConfig &cfg)
{
    const int n = cfg.n_antennas;
    switch (cfg.topology) {
    case Topology::N11: return {n, 1};
    case Topology::OneOneN: return {1, n};
    case Topology::OneNOne: return cfg.scheme == Scheme::FixedGain ? std::pair{1, n} : std::pair{n, n};
    }
    return {1, 1};
}

namespace {

std::vector<cplx> draw_vector(std::size_t n, Rng &rng)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    std::vector<cplx> v(n);
    for (auto &e : v) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        e = {re, im};
    }
    return v;
}

double norm2(const std::vector<cplx> &v)
{
    double s = 0.0;
    for (const auto &e : v) {
        s += std::norm(e);
    }
    return s;
}

// a^H b
cplx inner(const std::vector<cplx> &a, const std::vector<cplx> &b)
{
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

// Average-power constant of the fixed-gain (and no-ICI variable-gain) relay:
// the relay gain is w^2 = rho2 / constant.
double fixed_gain_denominator(const SystemConfig &cfg)
{
    const double n = cfg.n_antennas;
    switch (cfg.topology) {
    case Topology::N11: return n * cfg.rho1 + cfg.rho_i + 1.0;
    case Topology::OneOneN: return cfg.rho1 + cfg.rho_i + 1.0;
    case Topology::OneNOne:
        if (cfg.scheme == Scheme::FixedGain) {
            return n * cfg.rho1 + n * cfg.rho_i + 1.0;
        }
        return n * cfg.rho1 + cfg.rho_i + 1.0;
    }
    return 1.0;
}

bool constant_gain(const SystemConfig &cfg)
{
    return cfg.scheme == Scheme::FixedGain || (cfg.topology == Topology::OneNOne && !cfg.ici_at_relay);
}

} // namespace

ChannelDraw draw_channels(const SystemConfig &cfg, Rng &rng)
{
    const auto n = static_cast<std::size_t>(cfg.n_antennas);
    ChannelDraw d;
    switch (cfg.topology) {
    case Topology::N11:
        d.h1 = draw_vector(n, rng);
        d.h2 = draw_vector(1, rng);
        d.h_i = draw_vector(1, rng);
        break;
    case Topology::OneOneN:
        d.h1 = draw_vector(1, rng);
        d.h2 = draw_vector(n, rng);
        d.h_i = draw_vector(1, rng);
        break;
    case Topology::OneNOne:
        d.h1 = draw_vector(n, rng);
        d.h2 = draw_vector(n, rng);
        d.h_i = draw_vector(n, rng);
        break;
    }
    return d;
}

double sinr_from_channels(const SystemConfig &cfg, const ChannelDraw &d)
{
    const double p = cfg.rho1;
    const double pr = cfg.rho2;
    const double pi = cfg.rho_i;

    switch (cfg.topology) {
    case Topology::N11: {
        // Transmit beamformer matched to h1: w_t = h1^H / |h1|.
        const double h1n = std::sqrt(norm2(d.h1));
        cplx eff{0.0, 0.0};
        for (std::size_t i = 0; i < d.h1.size(); ++i) {
            eff += d.h1[i] * (std::conj(d.h1[i]) / h1n);
        }
        const double sig = std::norm(eff);
        const double g2 = std::norm(d.h2[0]);
        const double gi = std::norm(d.h_i[0]);
        const double w2 = cfg.scheme == Scheme::FixedGain ? pr / fixed_gain_denominator(cfg)
                                                          : pr / (sig * p + gi * pi + 1.0);
        return w2 * g2 * sig * p / (w2 * g2 * gi * pi + w2 * g2 + 1.0);
    }
    case Topology::OneOneN: {
        // MRC at the destination collects |h2|^2 of the relayed signal and noise.
        const double g1 = std::norm(d.h1[0]);
        const double g2 = norm2(d.h2);
        const double gi = std::norm(d.h_i[0]);
        const double w2 = cfg.scheme == Scheme::FixedGain ? pr / fixed_gain_denominator(cfg)
                                                          : pr / (g1 * p + gi * pi + 1.0);
        return w2 * g2 * g1 * p / (w2 * g2 * gi * pi + w2 * g2 + 1.0);
    }
    case Topology::OneNOne: {
        if (cfg.scheme == Scheme::FixedGain) {
            // W = w I.
            const double w2 = pr / fixed_gain_denominator(cfg);
            const double sig = std::norm(inner(d.h2, d.h1));
            const double itf = std::norm(inner(d.h2, d.h_i));
            const double g2 = norm2(d.h2);
            return w2 * sig * p / (w2 * itf * pi + w2 * g2 + 1.0);
        }
        // W = w h2 h1^H / (|h2||h1|): receive MRC toward h1, transmit MRT toward h2.
        const double g1 = norm2(d.h1);
        const double g2 = norm2(d.h2);
        const double n1 = std::sqrt(g1);
        const double n2 = std::sqrt(g2);
        const double proj_i = std::norm(inner(d.h1, d.h_i)) / g1;
        const double w2 = cfg.ici_at_relay ? pr / (g1 * p + proj_i * pi + 1.0) : pr / fixed_gain_denominator(cfg);
        // h2^H W h1 = w |h2||h1|, h2^H W h_i = w |h2| (h1^H h_i)/|h1|, |h2^H W|^2 = w^2 |h2|^2.
        const double sig = w2 * (n2 * n1) * (n2 * n1);
        const double itf = w2 * g2 * proj_i;
        const double noise = w2 * g2;
        return sig * p / (itf * pi + noise + 1.0);
    }
    }
    return 0.0;
}

EquivalentDraw reduce(const SystemConfig &cfg, const ChannelDraw &d)
{
    switch (cfg.topology) {
    case Topology::N11: return {norm2(d.h1), std::norm(d.h2[0]), std::norm(d.h_i[0])};
    case Topology::OneOneN: return {std::norm(d.h1[0]), norm2(d.h2), std::norm(d.h_i[0])};
    case Topology::OneNOne: {
        if (cfg.scheme == Scheme::FixedGain) {
            const double g2 = norm2(d.h2);
            return {std::norm(inner(d.h2, d.h1)) / g2, g2, std::norm(inner(d.h2, d.h_i)) / g2};
        }
        const double g1 = norm2(d.h1);
        return {g1, norm2(d.h2), std::norm(inner(d.h1, d.h_i)) / g1};
    }
    }
    return {};
}

double sinr_equivalent(const SystemConfig &cfg, const EquivalentDraw &d)
{
    const double a = cfg.rho1 * d.y1;
    const double itf = cfg.rho_i * d.y3 + 1.0;
    if (constant_gain(cfg)) {
        const double g = cfg.rho2 / fixed_gain_denominator(cfg) * d.y2;
        return a * g / (g * itf + 1.0);
    }
    const double b = cfg.rho2 * d.y2;
    return a * b / (itf * (b + 1.0) + a);
}

EquivalentDraw draw_equivalent(const SystemConfig &cfg, Rng &rng)
{
    const auto [n1, n2] = equivalent_shapes(cfg);
    std::gamma_distribution<double> g1(n1, 1.0);
    std::gamma_distribution<double> g2(n2, 1.0);
    std::exponential_distribution<double> e3(1.0);
    EquivalentDraw d;
    d.y1 = g1(rng);
    d.y2 = g2(rng);
    d.y3 = e3(rng);
    return d;
}

double sample_sinr_vector(const SystemConfig &cfg, Rng &rng)
{
    return sinr_from_channels(cfg, draw_channels(cfg, rng));
}

double sample_sinr_equivalent(const SystemConfig &cfg, Rng &rng)
{
    return sinr_equivalent(cfg, draw_equivalent(cfg, rng));
}

HopSinr hop_sinr(const SystemConfig &cfg, const EquivalentDraw &d)
{
    return {cfg.rho1 * d.y1 / (cfg.rho_i * d.y3 + 1.0), cfg.rho2 * d.y2};
}

} // namespace afrelay
