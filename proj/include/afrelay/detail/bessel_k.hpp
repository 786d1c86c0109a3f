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

#ifndef AFRELAY_DETAIL_BESSEL_K_HPP
#define AFRELAY_DETAIL_BESSEL_K_HPP

// Integer-order modified Bessel functions of the second kind, templated on the
// floating type so the analytic engine can run in extended precision.
//
// K_0 and K_1 come from the ascending series for x <= 2 and from Steed's
// continued fraction (CF2, Temme's normalisation) above that. Higher orders use
// the upward recurrence K_{n+1} = K_{n-1} + (2n/x) K_n, which is stable.

#include "afrelay/detail/real_math.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>

namespace afrelay::detail {

template <class Real>
inline constexpr Real euler_gamma_v = rmath::limits<Real>::euler_gamma();

// Scaled pair (e^x K_0(x), e^x K_1(x)).
template <class Real>
std::pair<Real, Real> bessel_k01_scaled(Real x)
{
    using rmath::exp;
    using rmath::fabs;
    using rmath::log;
    using rmath::sqrt;
    constexpr Real eps = rmath::limits<Real>::epsilon();

    if (x <= Real(2)) {
        // Ascending series. q = x^2/4.
        const Real q = x * x / Real(4);
        const Real lnhalf = log(x / Real(2));

        // I_0, I_1 and the digamma-weighted companions.
        Real t0 = 1;           // q^k / (k!)^2
        Real t1 = 1;           // q^k / (k! (k+1)!)
        Real i0 = 1;
        Real i1s = 1;          // I_1(x) / (x/2)
        Real harmonic = 0;     // H_k
        Real k0tail = 0;       // sum_{k>=1} H_k q^k/(k!)^2
        Real psi_k1 = -euler_gamma_v<Real>;       // psi(k+1)
        Real psi_k2 = Real(1) - euler_gamma_v<Real>; // psi(k+2)
        Real k1tail = psi_k1 + psi_k2;            // sum (psi(k+1)+psi(k+2)) t1
        for (int k = 1; k < 200; ++k) {
            t0 *= q / (Real(k) * Real(k));
            t1 *= q / (Real(k) * Real(k + 1));
            harmonic += Real(1) / Real(k);
            psi_k1 += Real(1) / Real(k);
            psi_k2 += Real(1) / Real(k + 1);
            i0 += t0;
            i1s += t1;
            k0tail += harmonic * t0;
            k1tail += (psi_k1 + psi_k2) * t1;
            if (t0 < eps * i0 * Real(1e-2) && t1 < eps * i1s * Real(1e-2)) {
                break;
            }
        }
        const Real k0 = -(lnhalf + euler_gamma_v<Real>) * i0 + k0tail;
        const Real k1 = Real(1) / x + lnhalf * (x / Real(2)) * i1s - (x / Real(4)) * k1tail;
        const Real ex = exp(x);
        return {k0 * ex, k1 * ex};
    }

    // Steed's CF2 with mu = 0.
    Real b = Real(2) * (Real(1) + x);
    Real d = Real(1) / b;
    Real h = d;
    Real delh = d;
    Real q1 = 0;
    Real q2 = 1;
    const Real a1 = Real(0.25);
    Real q = a1;
    Real c = a1;
    Real a = -a1;
    Real s = Real(1) + q * delh;
    for (int i = 2; i < 100000; ++i) {
        a -= Real(2 * (i - 1));
        c = -a * c / Real(i);
        const Real qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += Real(2);
        d = Real(1) / (b + a * d);
        delh = (b * d - Real(1)) * delh;
        h += delh;
        const Real dels = q * delh;
        s += dels;
        if (fabs(dels / s) < eps / Real(4)) {
            break;
        }
    }
    h = a1 * h;
    const Real k0 = sqrt(rmath::limits<Real>::pi() / (Real(2) * x)) / s;
    const Real k1 = k0 * (x + Real(0.5) - h) / x;
    return {k0, k1};
}

// Fills out[n] = e^x K_n(x) for n = 0..out.size()-1.
template <class Real>
void bessel_k_scaled_sequence(Real x, std::span<Real> out)
{
    if (out.empty()) {
        return;
    }
    const auto [k0, k1] = bessel_k01_scaled(x);
    out[0] = k0;
    if (out.size() > 1) {
        out[1] = k1;
    }
    for (std::size_t n = 1; n + 1 < out.size(); ++n) {
        out[n + 1] = out[n - 1] + (Real(2 * n) / x) * out[n];
    }
}

// e^x K_v(x).
template <class Real>
Real bessel_k_scaled(int v, Real x)
{
    v = v < 0 ? -v : v;
    const auto [k0, k1] = bessel_k01_scaled(x);
    if (v == 0) {
        return k0;
    }
    Real prev = k0;
    Real cur = k1;
    for (int n = 1; n < v; ++n) {
        const Real next = prev + (Real(2 * n) / x) * cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

// log K_v(x), assembled from ratios so that neither overflow (small x, large v)
// nor underflow (large x) can occur.
template <class Real>
Real log_bessel_k(int v, Real x)
{
    using rmath::log;
    v = v < 0 ? -v : v;
    const auto [k0, k1] = bessel_k01_scaled(x);
    if (v == 0) {
        return log(k0) - x;
    }
    Real logk = log(k1) - x;
    Real ratio = k1 / k0; // K_n / K_{n-1}
    for (int n = 1; n < v; ++n) {
        ratio = Real(1) / ratio + Real(2 * n) / x;
        logk += log(ratio);
    }
    return logk;
}

} // namespace afrelay::detail

#endif
