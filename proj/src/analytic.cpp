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

#include "afrelay/detail/bessel_k.hpp"
#include "afrelay/detail/incgamma.hpp"
#include "afrelay/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace afrelay {

using LD = long double;

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::ExactClosedForm: return "exact_closed_form";
    case Method::ExactQuadrature: return "exact_quadrature";
    case Method::LowerBound: return "lower_bound";
    case Method::HighSnrApprox: return "high_snr_approx";
    }
    return "?";
}

namespace {

namespace rm = detail::rmath;

#ifdef AFRELAY_HAVE_FLOAT128
using Wide = rm::float128;
#else
using Wide = LD;
#endif

constexpr int kWarnAntennas = 16;

// Below this the long double sums 1 - S have lost too many digits to S's
// rounding (~1e-18 absolute); the computation is repeated in Wide.
constexpr LD kEscalateBelow = 1e-9L;

// Absolute floors for the fused integrands, set by the rounding of 1 - S in
// the respective precision.
constexpr LD kFusedAbsFloorLd = 1e-18L;
constexpr LD kFusedAbsFloorWide = 1e-32L;

template <class R>
constexpr R neg_inf()
{
    return -std::numeric_limits<LD>::infinity();
}

template <class R = LD>
R lfact(int n)
{
    return rm::lgamma(static_cast<R>(n) + R(1));
}

template <class R = LD>
R lbinom(int n, int k)
{
    return lfact<R>(n) - lfact<R>(k) - lfact<R>(n - k);
}

// n * log(base) with 0^0 = 1 and 0^n = 0.
template <class R>
R pow_log(R base, int n)
{
    if (n == 0) {
        return R(0);
    }
    return base > R(0) ? static_cast<R>(n) * rm::log(base) : neg_inf<R>();
}

// log K_n(x) for n = 0..nmax via the ratio recurrence; never overflows.
template <class R>
void log_k_sequence(R x, int nmax, std::vector<R> &out)
{
    out.resize(static_cast<std::size_t>(nmax) + 1);
    const auto [k0, k1] = detail::bessel_k01_scaled<R>(x);
    out[0] = rm::log(k0) - x;
    if (nmax == 0) {
        return;
    }
    out[1] = rm::log(k1) - x;
    R ratio = k1 / k0;
    for (int n = 1; n < nmax; ++n) {
        ratio = R(1) / ratio + static_cast<R>(2 * n) / x;
        out[n + 1] = out[n] + rm::log(ratio);
    }
}

OutageValue finish(LD p, Method method, LD err, int n_antennas)
{
    OutageValue out;
    out.method = method;
    LD clamp = 0.0L;
    if (p < 0.0L) {
        clamp = -p;
        p = 0.0L;
    } else if (p > 1.0L) {
        clamp = p - 1.0L;
        p = 1.0L;
    }
    out.probability = static_cast<double>(p);
    out.numeric_error = static_cast<double>(err + clamp);
    out.precision_warning = n_antennas > kWarnAntennas || clamp > static_cast<LD>(kClampWindow);
    return out;
}

template <class R>
struct Params {
    R r1;
    R r2;
    R ri;
    R t;
    int n;
};

template <class R>
Params<R> params_of(const SystemConfig &cfg)
{
    return {static_cast<R>(cfg.rho1), static_cast<R>(cfg.rho2), static_cast<R>(cfg.rho_i),
            static_cast<R>(cfg.gamma_th), cfg.n_antennas};
}

// Sum of exp(log terms), all terms positive, with the term count for a
// rounding estimate.
template <class R>
struct PositiveSum {
    R sum = 0;
    int count = 0;

    void add_log(R lt)
    {
        if (lt != neg_inf<R>()) {
            sum += rm::exp(lt);
        }
        ++count;
    }
};

// N-1-1 fixed gain: survival as a triple sum with K_{k-j+1}.
template <class R>
PositiveSum<R> n11_fixed(const Params<R> &p)
{
    const R c0 = R(p.n) * p.r1 + p.ri + R(1);
    const R x = R(2) * rm::sqrt(c0 * p.t / (p.r1 * p.r2));
    std::vector<R> logk;
    log_k_sequence(x, std::max(1, p.n), logk);
    const R lt1 = rm::log(p.t / p.r1);
    const R lc = rm::log(c0 / p.r2);
    const R lden = rm::log(p.ri * p.t + p.r1);
    const R lr1 = rm::log(p.r1);
    const R l2 = rm::log(R(2));
    PositiveSum<R> s;
    for (int m = 0; m < p.n; ++m) {
        for (int j = 0; j <= m; ++j) {
            for (int k = 0; k <= j; ++k) {
                const int nu = k - j + 1;
                const R lt = -p.t / p.r1 + R(m) * lt1 + l2 - lfact<R>(m) + lbinom<R>(m, j) + lbinom<R>(j, k) +
                             lfact<R>(k) + pow_log(p.ri, k) + R(k + 1) * (lr1 - lden) + R(nu) / R(2) * lt1 +
                             R(j - k + 1) / R(2) * lc + logk[std::abs(nu)];
                s.add_log(lt);
            }
        }
    }
    return s;
}

// Single K_N term shared by 1-1-N and 1-N-1 fixed gain (they differ in c0).
template <class R>
PositiveSum<R> single_bessel(const Params<R> &p, R c0)
{
    const R a = c0 * p.t / (p.r1 * p.r2);
    const R lt = rm::log(R(2)) + rm::log(p.r1) - p.t / p.r1 - lfact<R>(p.n - 1) - rm::log(p.ri * p.t + p.r1) +
                 R(p.n) / R(2) * rm::log(a) + detail::log_bessel_k<R>(p.n, R(2) * rm::sqrt(a));
    PositiveSum<R> s;
    s.add_log(lt);
    return s;
}

template <class R>
PositiveSum<R> fixed_11n(const Params<R> &p)
{
    return single_bessel(p, p.r1 + p.ri + R(1));
}

template <class R>
PositiveSum<R> fixed_1n1(const Params<R> &p)
{
    return single_bessel(p, R(p.n) * p.r1 + R(p.n) * p.ri + R(1));
}

// 1-N-1 variable gain with the constant (no-ICI) gain: triple sum with K_{N+j-i}.
template <class R>
PositiveSum<R> onenone_variable_no_ici(const Params<R> &p)
{
    const R c0 = R(p.n) * p.r1 + p.ri + R(1);
    const R x = R(2) * rm::sqrt(c0 * p.t / (p.r1 * p.r2));
    std::vector<R> logk;
    log_k_sequence(x, 2 * p.n, logk);
    const R lt1 = rm::log(p.t / p.r1);
    const R lc = rm::log(c0 / p.r2);
    const R lq = rm::log(p.t * p.ri / p.r1 + R(1));
    const R pre = rm::log(R(2)) - p.t / p.r1 - lfact<R>(p.n - 1);
    PositiveSum<R> s;
    for (int m = 0; m < p.n; ++m) {
        for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= i; ++j) {
                const int nu = p.n + j - i;
                const R lt = pre + R(m) * lt1 - lfact<R>(m) + lbinom<R>(m, i) + lbinom<R>(i, j) + pow_log(p.ri, j) +
                             lfact<R>(j) - R(j + 1) * lq + R(nu) / R(2) * lt1 + R(p.n + i - j) / R(2) * lc +
                             logk[nu];
                s.add_log(lt);
            }
        }
    }
    return s;
}

// Evaluates 1 - S in long double, repeating in Wide when the result is small
// enough for S's rounding to matter.
template <template <class> class Form>
OutageValue closed_form(const SystemConfig &cfg)
{
    const auto s = Form<LD>::eval(params_of<LD>(cfg));
    LD p = 1.0L - s.sum;
    LD sum = s.sum;
    LD eps = std::numeric_limits<LD>::epsilon();
    if (p < kEscalateBelow) {
        const auto w = Form<Wide>::eval(params_of<Wide>(cfg));
        p = static_cast<LD>(Wide(1) - w.sum);
        sum = static_cast<LD>(w.sum);
        eps = static_cast<LD>(rm::limits<Wide>::epsilon());
    }
    const int n = cfg.n_antennas;
    const LD err = n > kWarnAntennas ? 8.0L * eps * static_cast<LD>(s.count) * std::max(sum, 1.0L) : 0.0L;
    return finish(p, Method::ExactClosedForm, err, n);
}

template <class R>
struct N11Fixed {
    static PositiveSum<R> eval(const Params<R> &p) { return n11_fixed(p); }
};
template <class R>
struct Fixed11N {
    static PositiveSum<R> eval(const Params<R> &p) { return fixed_11n(p); }
};
template <class R>
struct Fixed1N1 {
    static PositiveSum<R> eval(const Params<R> &p) { return fixed_1n1(p); }
};
template <class R>
struct Variable1N1NoIci {
    static PositiveSum<R> eval(const Params<R> &p) { return onenone_variable_no_ici(p); }
};

// Variable-gain forms with an instantaneous gain share one structure, indexed
// by the Gamma shapes (n1, n2) of the first- and second-hop gains:
//
//   P = 1 - pre * sum_{m<n1} sum_{j<=m} sum_{k<n2+j} c_{mjk} z^{nu/2} I(nu, p)
//
// with nu = k - m + 1, p = k + m + 1 and I the interference integral. The
// coefficient of each (nu, p) pair is summed over j up front.
template <class R>
struct VariableKernel {
    struct Group {
        int nu;
        int p;
        R log_coef; // includes pre and z^{nu/2}
    };
    std::vector<Group> groups;
    int max_order = 0;
    R z = 0;
    R ri = 0;
    R t = 0;
    R r1 = 1;

    // Outage conditioned on the interference power y: 1 - e^{-ri t y/r1} sum(...).
    R conditional_outage(R y, std::vector<R> &logk) const
    {
        const R d = ri * y + R(1);
        const R ld = rm::log(d);
        log_k_sequence(R(2) * rm::sqrt(z * d), max_order, logk);
        const R shift = -ri * t * y / r1;
        R s = 0;
        for (const auto &g : groups) {
            s += rm::exp(g.log_coef + R(g.p) / R(2) * ld + logk[std::abs(g.nu)] + shift);
        }
        return R(1) - s;
    }
};

template <class R>
VariableKernel<R> make_kernel(const Params<R> &p, int n1, int n2)
{
    VariableKernel<R> kern;
    kern.z = (p.t + R(1)) * p.t / (p.r1 * p.r2);
    kern.ri = p.ri;
    kern.t = p.t;
    kern.r1 = p.r1;
    const R lt1 = rm::log(p.t / p.r1);
    const R lt2 = rm::log(p.t / p.r2);
    const R linv2 = -rm::log(p.r2);
    const R lz = rm::log(kern.z);
    const R pre = rm::log(R(2)) - p.t / p.r1 - p.t / p.r2 - lfact<R>(n2 - 1);
    std::vector<R> parts;
    for (int m = 0; m < n1; ++m) {
        for (int k = 0; k < n2 + m; ++k) {
            // j ranges where k <= n2 + j - 1.
            parts.clear();
            R lmax = neg_inf<R>();
            for (int j = std::max(0, k - n2 + 1); j <= m; ++j) {
                const R lt = R(m) * lt1 - lfact<R>(m) + lbinom<R>(m, j) + R(m - j) * linv2 +
                             lbinom<R>(n2 + j - 1, k) + R(n2 + j - 1 - k) * lt2;
                parts.push_back(lt);
                lmax = std::max(lmax, lt);
            }
            if (parts.empty()) {
                continue;
            }
            R acc = 0;
            for (R lt : parts) {
                acc += rm::exp(lt - lmax);
            }
            const int nu = k - m + 1;
            kern.groups.push_back({nu, k + m + 1, pre + lmax + rm::log(acc) + R(nu) / R(2) * lz});
            kern.max_order = std::max(kern.max_order, std::abs(nu));
        }
    }
    return kern;
}

std::pair<int, int> variable_shapes(const SystemConfig &cfg)
{
    const int n = cfg.n_antennas;
    switch (cfg.topology) {
    case Topology::N11: return {n, 1};
    case Topology::OneOneN: return {1, n};
    case Topology::OneNOne: return {n, n};
    }
    return {1, 1};
}

// Integrates e^{-y} times the outage conditioned on the interference power,
// i.e. averages over Exp(1). Integrating this rather than each I(nu, p)
// separately avoids the 1 - sum cancellation at the integral level. The
// integrand is evaluated in long double, or in Wide once the result is small
// enough for long double rounding of 1 - S to show.
OutageValue fused_quadrature(const SystemConfig &cfg, const quad::QuadOptions &opt)
{
    const auto [n1, n2] = variable_shapes(cfg);
    const auto kern = make_kernel(params_of<LD>(cfg), n1, n2);
    std::vector<LD> logk;
    auto f_ld = [&](LD y) { return std::exp(-y) * kern.conditional_outage(y, logk); };

    const LD rel = static_cast<LD>(opt.rel_tol);
    auto res = quad::integrate_semi_infinite<LD>(f_ld, 1.0L, static_cast<LD>(opt.abs_tol), rel, opt.max_evaluations);
    // Small outage: the absolute tolerance would swamp the value, so tighten it
    // to the relative target, down to the integrand's rounding floor.
    const LD rel_target = rel * std::fabs(res.value);
    if (rel_target < static_cast<LD>(opt.abs_tol)) {
        if (std::fabs(res.value) < kEscalateBelow) {
            const auto wide = make_kernel(params_of<Wide>(cfg), n1, n2);
            std::vector<Wide> logk_w;
            auto f_w = [&](LD y) {
                return std::exp(-y) * static_cast<LD>(wide.conditional_outage(static_cast<Wide>(y), logk_w));
            };
            res = quad::integrate_semi_infinite<LD>(f_w, 1.0L, std::max(rel_target, kFusedAbsFloorWide), rel,
                                                    opt.max_evaluations);
        } else {
            res = quad::integrate_semi_infinite<LD>(f_ld, 1.0L, std::max(rel_target, kFusedAbsFloorLd), rel,
                                                    opt.max_evaluations);
        }
    }
    return finish(res.value, Method::ExactQuadrature, res.abs_error_estimate, cfg.n_antennas);
}

// I(nu, p) with the damping ri t / r1 + 1.
quad::BasicQuadResult<LD> nu_p_integral(const Params<LD> &p, int nu, int pw, const quad::QuadOptions &opt)
{
    const LD z = (p.t + 1.0L) * p.t / (p.r1 * p.r2);
    const LD c = p.ri * p.t / p.r1 + 1.0L;
    const int order = std::abs(nu);
    auto f = [&](LD y) -> LD {
        const LD d = p.ri * y + 1.0L;
        const LD lk = detail::log_bessel_k<LD>(order, 2.0L * std::sqrt(z * d));
        return std::exp(-c * y + 0.5L * pw * std::log(d) + lk);
    };
    return quad::integrate_semi_infinite<LD>(f, c, static_cast<LD>(opt.abs_tol), static_cast<LD>(opt.rel_tol),
                                             opt.max_evaluations);
}

void require_topology(const SystemConfig &cfg, Topology t, const char *who)
{
    if (cfg.topology != t) {
        throw std::invalid_argument(std::string(who) + ": wrong topology " + std::string(to_string(cfg.topology)));
    }
}

bool uses_instantaneous_gain(const SystemConfig &c)
{
    return c.scheme == Scheme::VariableGain && (c.topology != Topology::OneNOne || c.ici_at_relay);
}

// 1 - G1 Q(n2, t/r2), G1 the first-hop survival Pr(r1 y1 / (ri y3 + 1) > t).
template <class R>
R lower_bound_value(const Params<R> &p, int n1, int n2)
{
    const R lt1 = rm::log(p.t / p.r1);
    const R lq = rm::log(p.ri * p.t / p.r1 + R(1));
    R g1 = 0;
    for (int m = 0; m < n1; ++m) {
        for (int j = 0; j <= m; ++j) {
            g1 += rm::exp(-p.t / p.r1 + R(m) * lt1 - lfact<R>(m) + lbinom<R>(m, j) + lfact<R>(j) + pow_log(p.ri, j) -
                          R(j + 1) * lq);
        }
    }
    // Q(n2, x) = e^{-x} sum_{k<n2} x^k / k!
    const R x2 = p.t / p.r2;
    R term = 1;
    R q = 1;
    for (int k = 1; k < n2; ++k) {
        term *= x2 / R(k);
        q += term;
    }
    q *= rm::exp(-x2);
    return R(1) - g1 * q;
}

} // namespace

OutageValue outage_exact_n11(const SystemConfig &cfg, const quad::QuadOptions &opt)
{
    require_topology(cfg, Topology::N11, "outage_exact_n11");
    cfg.validate();
    if (cfg.scheme == Scheme::FixedGain) {
        return closed_form<N11Fixed>(cfg);
    }
    return fused_quadrature(cfg, opt);
}

OutageValue outage_exact_11n(const SystemConfig &cfg, const quad::QuadOptions &opt)
{
    require_topology(cfg, Topology::OneOneN, "outage_exact_11n");
    cfg.validate();
    if (cfg.scheme == Scheme::FixedGain) {
        return closed_form<Fixed11N>(cfg);
    }
    return fused_quadrature(cfg, opt);
}

OutageValue outage_exact_1n1(const SystemConfig &cfg, const quad::QuadOptions &opt)
{
    require_topology(cfg, Topology::OneNOne, "outage_exact_1n1");
    cfg.validate();
    if (cfg.scheme == Scheme::FixedGain) {
        return closed_form<Fixed1N1>(cfg);
    }
    if (!cfg.ici_at_relay) {
        return closed_form<Variable1N1NoIci>(cfg);
    }
    return fused_quadrature(cfg, opt);
}

OutageValue outage_exact(const SystemConfig &cfg, const quad::QuadOptions &opt)
{
    switch (cfg.topology) {
    case Topology::N11: return outage_exact_n11(cfg, opt);
    case Topology::OneOneN: return outage_exact_11n(cfg, opt);
    case Topology::OneNOne: return outage_exact_1n1(cfg, opt);
    }
    throw std::invalid_argument("outage_exact: unknown topology");
}

OutageValue outage_exact_termwise(const SystemConfig &cfg, const quad::QuadOptions &opt)
{
    cfg.validate();
    if (!uses_instantaneous_gain(cfg)) {
        return outage_exact(cfg, opt);
    }
    const auto p = params_of<LD>(cfg);
    const auto [n1, n2] = variable_shapes(cfg);
    const auto kern = make_kernel(p, n1, n2);
    LD s = 0.0L;
    LD err = 0.0L;
    for (const auto &g : kern.groups) {
        const auto r = nu_p_integral(p, g.nu, g.p, opt);
        const LD w = std::exp(g.log_coef);
        s += w * r.value;
        err += w * r.abs_error_estimate;
    }
    return finish(1.0L - s, Method::ExactQuadrature, err, p.n);
}

quad::QuadResult interference_integral(IntegralKind kind, const SystemConfig &cfg, IntegralIndex idx,
                                       const quad::QuadOptions &opt)
{
    cfg.validate();
    const int n = cfg.n_antennas;
    bool ok = false;
    switch (kind) {
    case IntegralKind::I1: ok = idx.m >= 0 && idx.m < n && idx.k >= 0 && idx.k <= idx.m; break;
    case IntegralKind::I2: ok = idx.m == 0 && idx.k >= 0 && idx.k < n; break;
    case IntegralKind::I3:
        ok = idx.m >= 0 && idx.m < n && idx.j >= 0 && idx.j <= idx.m && idx.k >= 0 && idx.k < n + idx.j;
        break;
    }
    if (!ok) {
        throw std::out_of_range("interference_integral: indices (k=" + std::to_string(idx.k) +
                                ", m=" + std::to_string(idx.m) + ", j=" + std::to_string(idx.j) +
                                ") outside the host sum for N=" + std::to_string(n));
    }
    const auto r = nu_p_integral(params_of<LD>(cfg), idx.k - idx.m + 1, idx.k + idx.m + 1, opt);
    return {static_cast<double>(r.value), static_cast<double>(r.abs_error_estimate), r.evaluations};
}

OutageValue outage_lower_variable(const SystemConfig &cfg)
{
    cfg.validate();
    if (cfg.scheme != Scheme::VariableGain) {
        throw std::invalid_argument("outage_lower_variable: requires variable gain");
    }
    if (cfg.topology == Topology::OneNOne && !cfg.ici_at_relay) {
        throw std::invalid_argument("outage_lower_variable: no bound for 1-N-1 variable gain without ICI");
    }
    const auto [n1, n2] = variable_shapes(cfg);
    LD v = lower_bound_value(params_of<LD>(cfg), n1, n2);
    if (v < kEscalateBelow) {
        v = static_cast<LD>(lower_bound_value(params_of<Wide>(cfg), n1, n2));
    }
    return finish(v, Method::LowerBound, 0.0L, cfg.n_antennas);
}

OutageValue outage_high_snr(const SystemConfig &cfg, const AsymptoticQuery &q)
{
    q.validate();
    SystemConfig c = cfg;
    c.rho1 = q.rho1;
    c.rho2 = q.mu * q.rho1;
    c.validate();
    const int n = c.n_antennas;
    const LD mu = q.mu;
    const LD x = static_cast<LD>(c.gamma_th) / static_cast<LD>(q.rho1);
    const LD ri = c.rho_i;
    auto need_two = [&](const char *what) {
        if (n < 2) {
            throw std::domain_error(std::string(what) + ": high-SNR approximation stated for N >= 2");
        }
    };
    auto psi = [](int k) { return static_cast<LD>(specfun::digamma_int(k)); };

    LD v = 0.0L;
    switch (c.topology) {
    case Topology::N11:
        if (c.scheme == Scheme::FixedGain) {
            if (n == 1) {
                v = ((std::log(mu / x) + psi(1) + psi(2)) / mu + ri + 1.0L) * x;
            } else {
                v = n / (mu * (n - 1)) * x;
            }
        } else {
            v = n == 1 ? (1.0L / mu + ri + 1.0L) * x : x / mu;
        }
        break;
    case Topology::OneOneN:
        need_two("1-1-N");
        if (c.scheme == Scheme::FixedGain) {
            v = (ri + 1.0L + 1.0L / ((n - 1) * mu)) * x;
        } else {
            v = (1.0L + ri) * x;
        }
        break;
    case Topology::OneNOne:
        if (c.scheme == Scheme::FixedGain) {
            need_two("1-N-1 fixed gain");
            v = (1.0L + ri + n / (mu * (n - 1))) * x;
        } else if (!c.ici_at_relay) {
            const LD u = n * x / mu;
            const LD lu = std::log(u);
            LD s = 0.0L;
            for (int i = 0; i < n; ++i) {
                const LD sign = ((n - i) % 2 == 0) ? 1.0L : -1.0L;
                s += sign * (lu - psi(1) - psi(n - i + 1)) / std::exp(lfact(n - 1) + lfact(i) + lfact(n - i));
            }
            v = s * std::pow(u, static_cast<LD>(n));
        } else {
            need_two("1-N-1 variable gain with ICI");
            // rho_i^N e^{1/rho_i} Gamma(N+1, 1/rho_i) = N! sum_k rho_i^k / (N-k)!,
            // which stays finite as rho_i -> 0.
            LD e = 0.0L;
            for (int k = 0; k <= n; ++k) {
                e += std::exp(pow_log(ri, k) + lfact(n) - lfact(n - k));
            }
            v = (e + std::pow(mu, -static_cast<LD>(n))) * std::exp(static_cast<LD>(n) * std::log(x) - lfact(n));
        }
        break;
    }
    return finish(v, Method::HighSnrApprox, 0.0L, n);
}

double lemma_cdf_ratio(const LemmaRatioParams &p, double x)
{
    if (p.n1 < 1 || !(p.lambda1 > 0) || !(p.lambda2 > 0) || !(p.a > 0) || !(p.b >= 0)) {
        throw std::invalid_argument("lemma_cdf_ratio: invalid parameters");
    }
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error("lemma_cdf_ratio: x must be >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    const LD u = static_cast<LD>(x) / (static_cast<LD>(p.a) * p.lambda1);
    const LD lu = std::log(u);
    const LD lden = std::log(static_cast<LD>(p.b) * u + 1.0L / p.lambda2);
    LD s = 0.0L;
    for (int m = 0; m < p.n1; ++m) {
        for (int j = 0; j <= m; ++j) {
            s += std::exp(-u + m * lu - lfact(m) + lbinom(m, j) + lfact(j) + pow_log(p.b, j) -
                          std::log(static_cast<LD>(p.lambda2)) - (j + 1) * lden);
        }
    }
    const LD f = 1.0L - s;
    return static_cast<double>(std::clamp(f, 0.0L, 1.0L));
}

double lemma_cdf_product(const LemmaProductParams &p, double x)
{
    if (p.n1 < 1 || p.n2 < 1 || !(p.lambda1 > 0) || !(p.lambda2 > 0) || !(p.a > 0) || !(p.b >= 0)) {
        throw std::invalid_argument("lemma_cdf_product: invalid parameters");
    }
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error("lemma_cdf_product: x must be >= 0");
    }
    const LD a = p.a;
    const LD ab = static_cast<LD>(p.a) * p.b;
    const LD l1 = p.lambda1;
    const LD l2 = p.lambda2;
    if (x == 0.0) {
        return static_cast<double>(detail::gamma_pq<LD>(p.n2, ab / l2).first);
    }
    const LD lx = x;
    const LD beta = a * (static_cast<LD>(p.b) + 1.0L) * lx / l1;
    const LD arg = 2.0L * std::sqrt(beta / l2);
    const LD lpow = std::log(beta * l2);
    std::vector<LD> logk;
    log_k_sequence(arg, std::max(p.n1, p.n2 + p.n1), logk);
    const LD pre = -lx / l1 - ab / l2 - p.n2 * std::log(l2) - lfact(p.n2 - 1);
    const LD lxl = std::log(lx / l1);
    LD s = 0.0L;
    for (int m = 0; m < p.n1; ++m) {
        for (int j = 0; j <= m; ++j) {
            for (int k = 0; k <= p.n2 + j - 1; ++k) {
                const int nu = k - m + 1;
                s += std::exp(pre + m * lxl - lfact(m) + lbinom(m, j) + pow_log(a, m - j) +
                              lbinom(p.n2 + j - 1, k) + pow_log(ab, p.n2 + j - 1 - k) + std::log(2.0L) +
                              0.5L * nu * lpow + logk[std::abs(nu)]);
            }
        }
    }
    return static_cast<double>(std::clamp(1.0L - s, 0.0L, 1.0L));
}

double lemma_cdf_min_asym(const LemmaMinParams &p, double x)
{
    if (!(p.c > 0) || !(p.lambda3 > 0)) {
        throw std::invalid_argument("lemma_cdf_min_asym: c and lambda3 must be > 0");
    }
    if (!(x > 0) || !std::isfinite(x)) {
        throw std::domain_error("lemma_cdf_min_asym: x must be finite and > 0");
    }
    const LD u = static_cast<LD>(p.c) * x;
    if (p.n2 == 1) {
        if (p.n1 < 2) {
            throw std::domain_error("lemma_cdf_min_asym: n2 = 1 branch needs n1 >= 2");
        }
        return static_cast<double>(u / (p.n1 - 1));
    }
    if (p.n1 != p.n2) {
        throw std::invalid_argument("lemma_cdf_min_asym: supported cases are n2 = 1 or n1 = n2");
    }
    const int n = p.n1;
    const LD lu = std::log(u);
    LD s = 0.0L;
    for (int i = 0; i < n; ++i) {
        const LD sign = ((n - i) % 2 == 0) ? 1.0L : -1.0L;
        s += sign * (lu - static_cast<LD>(specfun::digamma_int(1)) - static_cast<LD>(specfun::digamma_int(n - i + 1))) /
             std::exp(lfact(n - 1) + lfact(i) + lfact(n - i));
    }
    return static_cast<double>(s * std::pow(u, static_cast<LD>(n)));
}

CoefficientReport coefficient_report(int n, double mu, double rho_i)
{
    if (n < 2) {
        throw std::invalid_argument("coefficient_report: n must be >= 2");
    }
    if (!(mu > 0) || !std::isfinite(mu) || !(rho_i >= 0) || !std::isfinite(rho_i)) {
        throw std::invalid_argument("coefficient_report: need mu > 0 and rho_i >= 0");
    }
    const double d = mu * (n - 1);
    return {n / d, rho_i + 1.0 + 1.0 / d, 1.0 + rho_i + n / d};
}

} // namespace afrelay
