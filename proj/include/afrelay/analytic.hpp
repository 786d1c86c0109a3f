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

#ifndef AFRELAY_ANALYTIC_HPP
#define AFRELAY_ANALYTIC_HPP

// Outage probability in closed and quadrature form, lower bounds, high-SNR
// approximations and the distribution lemmas they are built from.
//
// All expressions are in normalised units (see model.hpp). Internally the
// finite sums run in long double with log-domain coefficients.

#include "afrelay/model.hpp"
#include "afrelay/quadrature.hpp"

#include <string_view>

namespace afrelay {

enum class Method { ExactClosedForm, ExactQuadrature, LowerBound, HighSnrApprox };

std::string_view to_string(Method m);

struct OutageValue {
    double probability = 0.0;
    Method method = Method::ExactClosedForm;
    /// Quadrature error estimate plus any clamp applied to reach [0, 1].
    double numeric_error = 0.0;
    /// Set for N > 16 (long sums, reduced relative accuracy in the deep tail)
    /// and when a clamp larger than the round-off window was needed.
    bool precision_warning = false;
};

/// Clamp window for round-off below 0 or above 1.
inline constexpr double kClampWindow = 1e-12;

// -- exact outage -----------------------------------------------------------

/// Dispatches on topology.
OutageValue outage_exact(const SystemConfig &cfg, const quad::QuadOptions &opt = quad::default_options());

/// Fixed gain: closed form. Variable gain: single quadrature over the
/// interference power.
OutageValue outage_exact_n11(const SystemConfig &cfg, const quad::QuadOptions &opt = quad::default_options());

/// Fixed gain: one Bessel term. Variable gain: single quadrature.
OutageValue outage_exact_11n(const SystemConfig &cfg, const quad::QuadOptions &opt = quad::default_options());

/// Fixed gain and variable gain without ICI: closed forms. Variable gain with
/// ICI: single quadrature.
OutageValue outage_exact_1n1(const SystemConfig &cfg, const quad::QuadOptions &opt = quad::default_options());

/// Same quantity as outage_exact, but variable-gain forms are assembled term by
/// term from interference_integral values rather than from one fused
/// integrand. Independent route used for cross-checking; loses relative
/// accuracy once the outage drops far below rel_tol.
OutageValue outage_exact_termwise(const SystemConfig &cfg, const quad::QuadOptions &opt = quad::default_options());

// -- interference integrals -------------------------------------------------

enum class IntegralKind { I1, I2, I3 };

/// Summation indices of the host sum. I1 (N-1-1): 0 <= k <= m < N.
/// I2 (1-1-N): m = 0, 0 <= k < N. I3 (1-N-1): 0 <= j <= m < N, 0 <= k < N + j.
struct IntegralIndex {
    int k = 0;
    int m = 0;
    int j = 0;
};

/// int_0^inf e^{-(rho_i g/rho1 + 1) y} (rho_i y + 1)^{(k+m+1)/2}
///     K_{k-m+1}(2 sqrt(z (rho_i y + 1))) dy,   z = (g + 1) g / (rho1 rho2),
/// with g = gamma_th. Throws std::out_of_range for indices outside the host sum.
quad::QuadResult interference_integral(IntegralKind kind, const SystemConfig &cfg, IntegralIndex idx,
                                       const quad::QuadOptions &opt = quad::default_options());

// -- bounds and approximations ----------------------------------------------

/// Lower bound from the min(first hop, second hop) upper bound on the SINR.
/// Requires VariableGain; for 1-N-1 also ici_at_relay. Otherwise throws
/// std::invalid_argument.
OutageValue outage_lower_variable(const SystemConfig &cfg);

/// High-SNR approximation at rho2 = mu rho1 (cfg.rho1 and cfg.rho2 are
/// replaced by the query). Throws std::domain_error when N is outside the
/// regime the approximation is stated for.
OutageValue outage_high_snr(const SystemConfig &cfg, const AsymptoticQuery &q);

// -- distribution lemmas ----------------------------------------------------

/// U = a y1 / (b y2 + 1), y1 ~ Gamma(n1, scale lambda1), y2 ~ Exp(mean lambda2).
struct LemmaRatioParams {
    int n1 = 1;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double a = 1.0;
    double b = 0.0;
};

/// U = y1 (y2 - a b) / (y2 + a), y_i ~ Gamma(n_i, scale lambda_i).
struct LemmaProductParams {
    int n1 = 1;
    int n2 = 1;
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double a = 1.0;
    double b = 0.0;
};

/// U = y1 min(1/(y3 + 1), y2/C), y_i ~ Gamma(n_i, 1), y3 ~ Exp(mean lambda3).
/// lambda3 does not enter the small-x expansion; it is kept for simulation.
struct LemmaMinParams {
    int n1 = 2;
    int n2 = 1;
    double lambda3 = 1.0;
    double c = 1.0;
};

double lemma_cdf_ratio(const LemmaRatioParams &p, double x);

/// At x = 0 returns Pr(y2 <= a b), the mass of U <= 0.
double lemma_cdf_product(const LemmaProductParams &p, double x);

/// Leading small-x behaviour of the CDF. Supported: n2 = 1 with n1 >= 2, and
/// n1 = n2. Other shapes throw std::invalid_argument; n1 = n2 = 1 with the
/// n2 = 1 branch is undefined and throws std::domain_error.
double lemma_cdf_min_asym(const LemmaMinParams &p, double x);

// -- array-gain coefficients ------------------------------------------------

/// Fixed-gain high-SNR outage divided by gamma_th / rho1, per topology.
struct CoefficientReport {
    double a_n11 = 0.0;
    double a_11n = 0.0;
    double a_1n1 = 0.0;
};

/// Throws std::invalid_argument for n < 2, mu <= 0 or rho_i < 0.
CoefficientReport coefficient_report(int n, double mu, double rho_i);

} // namespace afrelay

#endif
