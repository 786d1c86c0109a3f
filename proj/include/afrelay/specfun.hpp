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

#ifndef AFRELAY_SPECFUN_HPP
#define AFRELAY_SPECFUN_HPP

#include <vector>

namespace afrelay::specfun {

/// Largest integer argument accepted by the factorial/binomial helpers and the
/// antenna-count cap used throughout the library.
inline constexpr int kMaxAntennas = 64;

/// K_v(x) for integer v (negative orders folded, K_{-v} = K_v).
/// Throws std::domain_error for x <= 0 or non-finite x. Returns 0 on underflow.
double bessel_k_int(int v, double x);

/// e^x K_v(x).
double bessel_k_int_scaled(int v, double x);

/// log K_v(x); finite for every x > 0 and every order, for use in products with
/// large binomials or powers.
double log_bessel_k_int(int v, double x);

/// psi(n) = -gamma_E + H_{n-1}. Throws std::domain_error for n < 1.
double digamma_int(int n);

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Lower incomplete gamma gamma(n, x) for integer n >= 1, x >= 0.
double inc_gamma_lower(int n, double x);

/// Upper incomplete gamma Gamma(n, x) = (n-1)! e^{-x} sum_{k<n} x^k/k!.
double inc_gamma_upper(int n, double x);

/// Regularized P(n, x) = gamma(n, x) / Gamma(n).
double gamma_p(int n, double x);

/// Regularized Q(n, x) = Gamma(n, x) / Gamma(n).
double gamma_q(int n, double x);

double log_factorial(int n);
double log_binomial(int n, int k);
double binomial(int n, int k);

/// One term c * u^p (* ln u when log_term) of a series in u.
struct SeriesTerm {
    int power = 0;
    double coefficient = 0.0;
    bool log_term = false;
};

/// Small-argument expansion of u^{v/2} K_v(2 sqrt(u)) in powers of u:
///
///   (1/2) sum_{k<v} Gamma(v-k)/k! (-u)^k
///     - ((-u)^v / 2) sum_{k<truncation_order} (ln u - psi(k+1) - psi(v+k+1)) u^k / (k! (v+k)!)
struct SeriesExpansion {
    int order = 0;
    std::vector<SeriesTerm> terms;
    int truncation_order = 1;

    double evaluate(double u) const;
};

/// Builds the expansion above with max_terms log-carrying tail terms.
/// Throws std::invalid_argument for v < 1 or max_terms < 1.
SeriesExpansion bessel_k_small_x_expansion(int v, int max_terms);

} // namespace afrelay::specfun

#endif
