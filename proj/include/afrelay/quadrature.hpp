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

#ifndef AFRELAY_QUADRATURE_HPP
#define AFRELAY_QUADRATURE_HPP

// Globally adaptive Gauss-Kronrod (7/15) integration on [0, inf) for
// exponentially damped integrands. The half-line is cut into geometrically
// growing panels starting just right of 0 (so an integrable log singularity at
// the origin gets its own short panel), extended until the damping makes the
// remainder negligible, then the worst panel is bisected until the summed error
// estimate meets the tolerance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace afrelay::quad {

template <class Real>
struct BasicQuadResult {
    Real value = 0;
    Real abs_error_estimate = 0;
    std::int64_t evaluations = 0;
};

using QuadResult = BasicQuadResult<double>;

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    std::int64_t max_evaluations = 1'000'000;
};

/// Defaults, optionally overridden by AFRELAY_QUAD_ABS_TOL / AFRELAY_QUAD_REL_TOL.
/// The environment is read once per process.
QuadOptions default_options();

/// Thrown when the error estimate cannot be brought under tolerance within the
/// evaluation budget. Carries the best estimate reached.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string &what, QuadResult partial)
        : std::runtime_error(what), partial_(partial)
    {
    }
    const QuadResult &partial() const noexcept { return partial_; }

private:
    QuadResult partial_;
};

namespace detail {

// 15-point Kronrod nodes on [0,1] (descending, centre last) and weights; the
// embedded 7-point Gauss rule uses the odd-indexed nodes.
inline constexpr long double kXgk[8] = {
    0.991455371120812639206854697526328517L, 0.949107912342758524526189684047851262L,
    0.864864423359769072789712788640926201L, 0.741531185599394439863864773280788407L,
    0.586087235467691130294144838258729598L, 0.405845151377397166906606412076961463L,
    0.207784955007898467600689403773244913L, 0.0L,
};
inline constexpr long double kWgk[8] = {
    0.022935322010529224963732008058969592L, 0.063092092629978553290700663189204287L,
    0.104790010322250183839876322541518017L, 0.140653259715525918745189590510237920L,
    0.169004726639267902826583426598550284L, 0.190350578064785409913256402421013683L,
    0.204432940075298892414161999234649085L, 0.209482141084727828012999174891714264L,
};
inline constexpr long double kWg[4] = {
    0.129484966168869693270611432679082018L, 0.279705391489276667901467771423779582L,
    0.381830050505118944950369775488975134L, 0.417959183673469387755102040816326531L,
};

template <class Real>
struct Panel {
    Real a;
    Real b;
    Real value;
    Real error;
    bool operator<(const Panel &o) const { return error < o.error; }
};

// One G7/K15 application on [a, b] with QUADPACK's error heuristic.
template <class Real, class F>
Panel<Real> gk15(const F &f, Real a, Real b)
{
    using std::fabs;
    using std::pow;
    const Real centre = (a + b) / Real(2);
    const Real half = (b - a) / Real(2);
    Real fv1[7];
    Real fv2[7];
    const Real fc = f(centre);
    Real resg = fc * Real(kWg[3]);
    Real resk = fc * Real(kWgk[7]);
    Real resabs = fabs(resk);
    for (int j = 0; j < 7; ++j) {
        const Real dx = half * Real(kXgk[j]);
        const Real f1 = f(centre - dx);
        const Real f2 = f(centre + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += Real(kWgk[j]) * (f1 + f2);
        resabs += Real(kWgk[j]) * (fabs(f1) + fabs(f2));
        if (j % 2 == 1) {
            resg += Real(kWg[j / 2]) * (f1 + f2);
        }
    }
    const Real reskh = resk / Real(2);
    Real resasc = Real(kWgk[7]) * fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += Real(kWgk[j]) * (fabs(fv1[j] - reskh) + fabs(fv2[j] - reskh));
    }
    const Real scale = fabs(half);
    const Real result = resk * half;
    resabs *= scale;
    resasc *= scale;
    Real err = fabs((resk - resg) * half);
    if (resasc != Real(0) && err != Real(0)) {
        err = resasc * std::min(Real(1), pow(Real(200) * err / resasc, Real(1.5)));
    }
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    if (resabs > std::numeric_limits<Real>::min() / (Real(50) * eps)) {
        err = std::max(Real(50) * eps * resabs, err);
    }
    return {a, b, result, err};
}

} // namespace detail

/// Integrates f over [0, inf). decay_rate > 0 is the rate c of an exponential
/// factor e^{-c x} known to bound the integrand's tail; it sets the panel scale
/// and the initial truncation point. Throws QuadratureError on non-convergence
/// and std::invalid_argument on bad options.
template <class Real, class F>
BasicQuadResult<Real> integrate_semi_infinite(const F &f, Real decay_rate, Real abs_tol, Real rel_tol,
                                              std::int64_t max_evaluations = 1'000'000)
{
    using std::fabs;
    using std::log;
    if (!(decay_rate > Real(0)) || !std::isfinite(static_cast<double>(decay_rate))) {
        throw std::invalid_argument("integrate_semi_infinite: decay_rate must be finite and > 0");
    }
    if (!(abs_tol > Real(0)) || !(rel_tol > Real(0))) {
        throw std::invalid_argument("integrate_semi_infinite: tolerances must be > 0");
    }

    const Real scale = Real(1) / decay_rate;
    // Remainder bound e^{-c L} / c below abs_tol / 10.
    const Real truncation = std::max(Real(8) * scale, log(Real(10) / (abs_tol * decay_rate)) * scale);

    std::vector<detail::Panel<Real>> panels;
    std::int64_t evals = 0;
    auto add_panel = [&](Real a, Real b) {
        panels.push_back(detail::gk15<Real>(f, a, b));
        evals += 15;
        return panels.back();
    };

    // 0, s/256, s/16, s, 2s, 4s, ... up to the truncation point.
    Real lo = 0;
    for (Real edge : {scale / Real(256), scale / Real(16), scale}) {
        add_panel(lo, edge);
        lo = edge;
    }
    while (lo < truncation) {
        const Real hi = std::min(Real(2) * lo, truncation);
        add_panel(lo, hi);
        lo = hi;
    }

    auto totals = [&]() {
        Real v = 0;
        Real e = 0;
        for (const auto &p : panels) {
            v += p.value;
            e += p.error;
        }
        return std::pair<Real, Real>{v, e};
    };

    // Polynomial factors can outlast the pure exponential estimate: keep adding
    // doubling panels while the last one is still visible at the target accuracy.
    for (int extra = 0; extra < 64; ++extra) {
        const auto [v, e] = totals();
        const Real target = std::max(abs_tol, rel_tol * fabs(v));
        const auto &last = panels.back();
        if (fabs(last.value) + last.error < target / Real(10)) {
            break;
        }
        add_panel(lo, Real(2) * lo);
        lo = Real(2) * lo;
    }

    std::priority_queue<detail::Panel<Real>> heap(panels.begin(), panels.end());
    Real value = 0;
    Real error = 0;
    for (const auto &p : panels) {
        value += p.value;
        error += p.error;
    }
    int bisections = 0;
    while (error > std::max(abs_tol, rel_tol * fabs(value))) {
        if (evals + 30 > max_evaluations) {
            QuadResult partial{static_cast<double>(value), static_cast<double>(error), evals};
            throw QuadratureError("integrate_semi_infinite: tolerance not met within " +
                                      std::to_string(max_evaluations) + " evaluations",
                                  partial);
        }
        const auto worst = heap.top();
        heap.pop();
        const Real mid = (worst.a + worst.b) / Real(2);
        if (!(mid > worst.a && mid < worst.b)) {
            QuadResult partial{static_cast<double>(value), static_cast<double>(error), evals};
            throw QuadratureError("integrate_semi_infinite: panel width underflow", partial);
        }
        const auto left = detail::gk15<Real>(f, worst.a, mid);
        const auto right = detail::gk15<Real>(f, mid, worst.b);
        evals += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Re-sum occasionally to stop the running totals drifting.
        if (++bisections % 128 == 0) {
            value = 0;
            error = 0;
            auto copy = heap;
            while (!copy.empty()) {
                value += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    return {value, error, evals};
}

/// Double-precision convenience overload.
template <class F>
QuadResult integrate_semi_infinite(const F &f, double decay_rate, const QuadOptions &opt = default_options())
{
    return integrate_semi_infinite<double>(f, decay_rate, opt.abs_tol, opt.rel_tol, opt.max_evaluations);
}

} // namespace afrelay::quad

#endif
