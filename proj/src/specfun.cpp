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

#include "afrelay/specfun.hpp"

#include "afrelay/detail/bessel_k.hpp"
#include "afrelay/detail/incgamma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <limits>
#include <stdexcept>
#include <string>

namespace afrelay::specfun {

namespace {

void check_bessel_arg(double x)
{
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error("bessel_k_int: argument must be finite and > 0, got " + std::to_string(x));
    }
}

void check_shape(int n, double x, const char *who)
{
    if (n < 1) {
        throw std::domain_error(std::string(who) + ": shape must be >= 1");
    }
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error(std::string(who) + ": argument must be >= 0");
    }
}

} // namespace

double bessel_k_int(int v, double x)
{
    check_bessel_arg(x);
    // Long double keeps both the recurrence and e^{-x} in range well past the
    // limits of double, so the final cast is the only rounding that matters.
    const long double lx = x;
    const long double k = detail::bessel_k_scaled<long double>(v, lx) * std::exp(-lx);
    return static_cast<double>(k);
}

double bessel_k_int_scaled(int v, double x)
{
    check_bessel_arg(x);
    return static_cast<double>(detail::bessel_k_scaled<long double>(v, x));
}

double log_bessel_k_int(int v, double x)
{
    check_bessel_arg(x);
    return static_cast<double>(detail::log_bessel_k<long double>(v, x));
}

double digamma_int(int n)
{
    if (n < 1) {
        throw std::domain_error("digamma_int: n must be >= 1");
    }
    long double h = 0.0L;
    for (int k = n - 1; k >= 1; --k) {
        h += 1.0L / k;
    }
    return static_cast<double>(h - detail::euler_gamma_v<long double>);
}

double gamma_p(int n, double x)
{
    check_shape(n, x, "gamma_p");
    return static_cast<double>(detail::gamma_pq<long double>(n, x).first);
}

double gamma_q(int n, double x)
{
    check_shape(n, x, "gamma_q");
    return static_cast<double>(detail::gamma_pq<long double>(n, x).second);
}

double inc_gamma_lower(int n, double x)
{
    check_shape(n, x, "inc_gamma_lower");
    const long double p = detail::gamma_pq<long double>(n, x).first;
    return static_cast<double>(p * std::exp(std::lgamma(static_cast<long double>(n))));
}

double inc_gamma_upper(int n, double x)
{
    check_shape(n, x, "inc_gamma_upper");
    const long double q = detail::gamma_pq<long double>(n, x).second;
    return static_cast<double>(q * std::exp(std::lgamma(static_cast<long double>(n))));
}

double log_factorial(int n)
{
    if (n < 0) {
        throw std::domain_error("log_factorial: n must be >= 0");
    }
    return static_cast<double>(std::lgamma(static_cast<long double>(n) + 1.0L));
}

double log_binomial(int n, int k)
{
    if (k < 0 || k > n) {
        throw std::domain_error("log_binomial: need 0 <= k <= n");
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double binomial(int n, int k)
{
    if (k < 0 || k > n) {
        throw std::domain_error("binomial: need 0 <= k <= n");
    }
    k = std::min(k, n - k);
    // exact in 64 bits while it fits: C(m, i) = C(m - 1, i - 1) * m / i, with the
    // gcd divided out first so the product never needs the full numerator
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        const auto g = std::gcd(r, static_cast<std::uint64_t>(i));
        const std::uint64_t f = static_cast<std::uint64_t>(n - k + i) / (static_cast<std::uint64_t>(i) / g);
        if (r / g > std::numeric_limits<std::uint64_t>::max() / f) {
            return std::round(std::exp(log_binomial(n, k)));
        }
        r = r / g * f;
    }
    return static_cast<double>(r);
}

double SeriesExpansion::evaluate(double u) const
{
    const double lnu = std::log(u);
    double sum = 0.0;
    for (const auto &t : terms) {
        double v = t.coefficient * std::pow(u, t.power);
        if (t.log_term) {
            v *= lnu;
        }
        sum += v;
    }
    return sum;
}

SeriesExpansion bessel_k_small_x_expansion(int v, int max_terms)
{
    if (v < 1) {
        throw std::invalid_argument("bessel_k_small_x_expansion: order must be >= 1");
    }
    if (max_terms < 1) {
        throw std::invalid_argument("bessel_k_small_x_expansion: max_terms must be >= 1");
    }
    SeriesExpansion e;
    e.order = v;
    e.truncation_order = max_terms;

    // Finite part: (1/2) Gamma(v-k)/k! (-u)^k
    for (int k = 0; k < v; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double c = 0.5 * sign * std::exp(std::lgamma(double(v - k)) - std::lgamma(double(k + 1)));
        e.terms.push_back({k, c, false});
    }
    // Tail: -((-1)^v / 2) u^{v+k} (ln u - psi(k+1) - psi(v+k+1)) / (k! (v+k)!)
    const double vsign = (v % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k < max_terms; ++k) {
        const double w = std::exp(-std::lgamma(double(k + 1)) - std::lgamma(double(v + k + 1)));
        const double lead = -0.5 * vsign * w;
        e.terms.push_back({v + k, lead, true});
        e.terms.push_back({v + k, -lead * (digamma_int(k + 1) + digamma_int(v + k + 1)), false});
    }
    return e;
}

} // namespace afrelay::specfun
