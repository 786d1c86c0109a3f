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

#ifndef AFRELAY_MODEL_HPP
#define AFRELAY_MODEL_HPP

// System configuration and channel-level SINR for the three antenna placements.
//
// Normalisation: noise power N0 = 1 and unit channel variances, so the source,
// relay and interferer powers are rho1, rho2 and rho_i directly.

#include <complex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace afrelay {

enum class Topology { N11, OneOneN, OneNOne };
enum class Scheme { FixedGain, VariableGain };

std::string_view to_string(Topology t);
std::string_view to_string(Scheme s);
Topology parse_topology(std::string_view s);
Scheme parse_scheme(std::string_view s);

struct SystemConfig {
    Topology topology = Topology::N11;
    Scheme scheme = Scheme::FixedGain;
    /// Only meaningful for OneNOne + VariableGain: true selects the
    /// instantaneous (interference-aware) relay gain.
    bool ici_at_relay = false;
    int n_antennas = 1;
    double rho1 = 1.0;
    double rho2 = 1.0;
    double rho_i = 1.0;
    double gamma_th = 1.0;

    /// Throws std::invalid_argument when any invariant is violated.
    void validate() const;

    /// Copy with ici_at_relay forced to false wherever it has no meaning.
    SystemConfig canonical() const;

    bool operator==(const SystemConfig &) const = default;
};

std::string describe(const SystemConfig &cfg);

/// High-SNR operating point: rho2 = mu * rho1.
struct AsymptoticQuery {
    double mu = 1.0;
    double rho1 = 1.0;

    void validate() const;
};

using Rng = std::mt19937_64;
using cplx = std::complex<double>;

/// One realisation of the three links. Sizes depend on the topology:
/// N11: h1 has N entries, h2 and h_i one; OneOneN: h2 has N; OneNOne: all N.
struct ChannelDraw {
    std::vector<cplx> h1;
    std::vector<cplx> h2;
    std::vector<cplx> h_i;
};

/// Scalar statistics the end-to-end SINR depends on.
///   y1: desired-signal gain after beamforming/combining (Gamma(n1,1))
///   y2: second-hop gain (Gamma(n2,1))
///   y3: interference power seen through the receive filter (Exp(1))
struct EquivalentDraw {
    double y1 = 0.0;
    double y2 = 0.0;
    double y3 = 0.0;
};

/// Gamma shapes (n1, n2) of y1 and y2 for a configuration.
std::pair<int, int> equivalent_shapes(const SystemConfig &cfg);

/// i.i.d. CN(0,1) entries, real and imaginary parts N(0, 1/2).
ChannelDraw draw_channels(const SystemConfig &cfg, Rng &rng);

/// End-to-end SINR from the full vector model (beamformer, MRC, relay matrix).
double sinr_from_channels(const SystemConfig &cfg, const ChannelDraw &draw);

/// Projects a vector draw onto the scalar statistics, so the two SINR forms can
/// be compared on the same realisation.
EquivalentDraw reduce(const SystemConfig &cfg, const ChannelDraw &draw);

/// End-to-end SINR from the scalar statistics.
double sinr_equivalent(const SystemConfig &cfg, const EquivalentDraw &d);

EquivalentDraw draw_equivalent(const SystemConfig &cfg, Rng &rng);

double sample_sinr_vector(const SystemConfig &cfg, Rng &rng);
double sample_sinr_equivalent(const SystemConfig &cfg, Rng &rng);

/// Per-hop quantities bounding the variable-gain SINR from above:
/// first hop rho1*y1/(rho_i*y3 + 1), second hop rho2*y2.
struct HopSinr {
    double first = 0.0;
    double second = 0.0;
};
HopSinr hop_sinr(const SystemConfig &cfg, const EquivalentDraw &d);

} // namespace afrelay

#endif
