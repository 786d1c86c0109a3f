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

#ifndef AFRELAY_DETAIL_INCGAMMA_HPP
#define AFRELAY_DETAIL_INCGAMMA_HPP

#include <cmath>
#include <limits>
#include <utility>

namespace afrelay::detail {

// Regularized (P, Q) for integer shape n >= 1. Whichever of the two is small
// is computed directly; the other is its complement.
template <class Real>
std::pair<Real, Real> gamma_pq(int n, Real x)
{
    using std::exp;
    using std::lgamma;
    using std::log;
    if (x <= Real(0)) {
        return {Real(0), Real(1)};
    }
    if (x < Real(n)) {
        // P(n,x) = x^n e^{-x} / n! * sum_k x^k / ((n+1)...(n+k))
        Real term = 1;
        Real sum = 1;
        for (int k = 1; k < 100000; ++k) {
            term *= x / Real(n + k);
            sum += term;
            if (term < sum * std::numeric_limits<Real>::epsilon() * Real(0.1)) {
                break;
            }
        }
        const Real logpre = Real(n) * log(x) - x - lgamma(Real(n + 1));
        const Real p = exp(logpre) * sum;
        return {p, Real(1) - p};
    }
    // Q(n,x) = e^{-x} sum_{k<n} x^k/k!, summed from the largest term down.
    Real term = 1;
    Real sum = 1;
    for (int k = 1; k < n; ++k) {
        term *= x / Real(k);
        sum += term;
    }
    // sum * e^{-x} may underflow in steps; do it in logs.
    const Real q = exp(log(sum) - x);
    return {Real(1) - q, q};
}

} // namespace afrelay::detail

#endif
