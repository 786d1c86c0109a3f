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

#include "afrelay/cli.hpp"

#include "afrelay/quadrature.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace afrelay::cli {

std::string_view to_string(MethodSel m)
{
    switch (m) {
    case MethodSel::Exact: return "exact";
    case MethodSel::Lower: return "lower";
    case MethodSel::Asymptotic: return "asymptotic";
    case MethodSel::MonteCarlo: return "mc";
    }
    return "?";
}

MethodSel parse_method(std::string_view s)
{
    if (s == "exact") {
        return MethodSel::Exact;
    }
    if (s == "lower") {
        return MethodSel::Lower;
    }
    if (s == "asymptotic" || s == "asym") {
        return MethodSel::Asymptotic;
    }
    if (s == "mc") {
        return MethodSel::MonteCarlo;
    }
    throw UsageError("unknown method '" + std::string(s) + "' (exact, lower, asymptotic, mc)");
}

double db_to_linear(std::string_view db)
{
    const std::string s(db);
    if (s.empty()) {
        throw UsageError("empty dB value");
    }
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
        throw UsageError("bad dB value '" + s + "'");
    }
    if (v == -std::numeric_limits<double>::infinity()) {
        return 0.0;
    }
    return std::pow(10.0, v / 10.0);
}

double linear_to_db(double lin)
{
    return 10.0 * std::log10(lin);
}

void SweepSpec::validate() const
{
    if (rho1_grid_db.empty()) {
        throw UsageError("sweep grid is empty");
    }
    for (std::size_t i = 1; i < rho1_grid_db.size(); ++i) {
        if (!(rho1_grid_db[i] > rho1_grid_db[i - 1])) {
            throw UsageError("sweep grid must be strictly increasing");
        }
    }
    if (methods.empty()) {
        throw UsageError("no methods selected");
    }
    if (!(mu > 0) || !std::isfinite(mu)) {
        throw UsageError("mu must be finite and > 0");
    }
    if (std::find(methods.begin(), methods.end(), MethodSel::MonteCarlo) != methods.end() &&
        mc_samples < mc::kMinSamples) {
        throw UsageError("mc-samples must be >= " + std::to_string(mc::kMinSamples));
    }
}

namespace {

std::string fmt_num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string fmt_short(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Flag combinations the engine has no formula for.
void check_applicable(const SystemConfig &cfg, MethodSel m)
{
    if (m != MethodSel::Lower) {
        return;
    }
    if (cfg.scheme != Scheme::VariableGain) {
        throw UsageError("--lower needs --scheme variable");
    }
    if (cfg.topology == Topology::OneNOne && !cfg.ici_at_relay) {
        throw UsageError("--lower for 1n1 variable gain needs --ici");
    }
}

void validate_config(const SystemConfig &cfg)
{
    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

std::vector<double> parse_grid(const std::string &s)
{
    std::vector<double> out;
    auto num = [](const std::string &tok) {
        char *end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size() || !std::isfinite(v)) {
            throw UsageError("bad grid value '" + tok + "'");
        }
        return v;
    };
    // start:step:stop
    if (std::count(s.begin(), s.end(), ':') == 2) {
        const auto a = s.find(':');
        const auto b = s.find(':', a + 1);
        const double start = num(s.substr(0, a));
        const double step = num(s.substr(a + 1, b - a - 1));
        const double stop = num(s.substr(b + 1));
        if (!(step > 0) || stop < start) {
            throw UsageError("grid range needs step > 0 and stop >= start");
        }
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        if (n > 100000) {
            throw UsageError("grid too large");
        }
        for (long i = 0; i <= n; ++i) {
            out.push_back(start + static_cast<double>(i) * step);
        }
        return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        out.push_back(num(tok));
    }
    return out;
}

// Shared option values; lists expand to a cartesian product of configs.
struct Common {
    std::vector<std::string> topologies{"n11"};
    std::vector<std::string> schemes{"fixed"};
    bool ici = false;
    std::vector<int> ns{1};
    std::string rho1_db = "10";
    std::string rho2_db;
    double mu = 1.0;
    std::string rhoi_db = "0";
    std::string gamma_th_db = "0";
    std::uint64_t seed = 1;
    std::int64_t mc_samples = mc::kDefaultSamples;
    unsigned threads = 0;
    std::string out_path;
    bool csv = false;
};

std::vector<SystemConfig> expand(const Common &c)
{
    std::vector<SystemConfig> out;
    for (const auto &t : c.topologies) {
        for (const auto &s : c.schemes) {
            for (int n : c.ns) {
                SystemConfig cfg;
                try {
                    cfg.topology = parse_topology(t);
                    cfg.scheme = parse_scheme(s);
                } catch (const std::invalid_argument &e) {
                    throw UsageError(e.what());
                }
                cfg.ici_at_relay = c.ici;
                cfg.n_antennas = n;
                cfg.rho_i = db_to_linear(c.rhoi_db);
                cfg.gamma_th = db_to_linear(c.gamma_th_db);
                out.push_back(cfg.canonical());
            }
        }
    }
    return out;
}

void set_rho(SystemConfig &cfg, double rho1_db, double mu)
{
    cfg.rho1 = std::pow(10.0, rho1_db / 10.0);
    cfg.rho2 = mu * cfg.rho1;
}

std::string label(const SystemConfig &cfg)
{
    std::string s = std::string(to_string(cfg.topology)) + "/" + std::string(to_string(cfg.scheme));
    if (cfg.ici_at_relay) {
        s += "+ici";
    }
    return s + " N=" + std::to_string(cfg.n_antennas);
}

std::string pad(std::string s, std::size_t w)
{
    if (s.size() < w) {
        s.append(w - s.size(), ' ');
    }
    return s;
}

struct Output {
    std::ofstream file;
    std::ostream *os;

    Output(const std::string &path, std::ostream &fallback) : os(&fallback)
    {
        if (!path.empty()) {
            file.open(path, std::ios::out | std::ios::trunc);
            if (!file) {
                throw std::runtime_error("cannot open '" + path + "' for writing");
            }
            os = &file;
        }
    }

    void finish(const std::string &path)
    {
        os->flush();
        if (!*os) {
            throw std::runtime_error("write failed" + (path.empty() ? std::string() : " for '" + path + "'"));
        }
    }
};

void print_table(std::ostream &os, const std::vector<ResultRow> &rows)
{
    os << pad("config", 26) << pad("rho1_dB", 9) << pad("method", 20) << pad("probability", 22)
       << pad("error/ci95", 14) << "samples\n";
    for (const auto &r : rows) {
        os << pad(label(r.cfg), 26) << pad(fmt_short(linear_to_db(r.cfg.rho1)), 9) << pad(r.method_tag, 20)
           << pad(fmt_num(r.probability), 22) << pad(fmt_short(r.error_or_ci), 14)
           << (r.n_samples ? std::to_string(*r.n_samples) : std::string("-")) << (r.warning ? "  [precision]" : "")
           << '\n';
    }
}

std::vector<MethodSel> parse_methods(const std::vector<std::string> &names)
{
    std::vector<MethodSel> out;
    for (const auto &n : names) {
        out.push_back(parse_method(n));
    }
    return out;
}

// -- subcommands ------------------------------------------------------------

int cmd_eval(const Common &c, std::vector<MethodSel> methods, std::ostream &out)
{
    if (methods.empty()) {
        methods.push_back(MethodSel::Exact);
    }
    std::vector<SystemConfig> cfgs = expand(c);
    for (auto &cfg : cfgs) {
        cfg.rho1 = db_to_linear(c.rho1_db);
        cfg.rho2 = c.rho2_db.empty() ? c.mu * cfg.rho1 : db_to_linear(c.rho2_db);
        validate_config(cfg);
        for (auto m : methods) {
            check_applicable(cfg, m);
        }
    }
    if (std::find(methods.begin(), methods.end(), MethodSel::MonteCarlo) != methods.end() &&
        c.mc_samples < mc::kMinSamples) {
        throw UsageError("mc-samples must be >= " + std::to_string(mc::kMinSamples));
    }
    std::vector<ResultRow> rows;
    for (const auto &cfg : cfgs) {
        for (auto m : methods) {
            rows.push_back(evaluate(cfg, m, c.mc_samples, c.seed, c.threads));
        }
    }
    Output o(c.out_path, out);
    if (c.csv) {
        write_csv_header(*o.os);
        for (const auto &r : rows) {
            write_csv_row(*o.os, r);
        }
    } else {
        print_table(*o.os, rows);
    }
    o.finish(c.out_path);
    return kExitOk;
}

int cmd_sweep(const Common &c, const std::string &grid, const std::vector<std::string> &method_names,
              std::ostream &out)
{
    if (!c.rho2_db.empty()) {
        throw UsageError("sweep couples rho2 to rho1 through --mu; --rho2-db is not accepted");
    }
    std::vector<SweepSpec> specs;
    for (const auto &cfg : expand(c)) {
        SweepSpec spec;
        spec.base = cfg;
        spec.rho1_grid_db = parse_grid(grid);
        spec.mu = c.mu;
        spec.methods = parse_methods(method_names);
        spec.mc_samples = c.mc_samples;
        spec.seed = c.seed;
        spec.threads = c.threads;
        spec.validate();
        SystemConfig probe = cfg;
        set_rho(probe, spec.rho1_grid_db.front(), spec.mu);
        validate_config(probe);
        for (auto m : spec.methods) {
            check_applicable(probe, m);
        }
        specs.push_back(std::move(spec));
    }
    Output o(c.out_path, out);
    write_csv_header(*o.os);
    for (const auto &spec : specs) {
        for (const auto &r : run_sweep(spec)) {
            write_csv_row(*o.os, r);
        }
    }
    o.finish(c.out_path);
    return kExitOk;
}

struct ValidateRow {
    SystemConfig cfg;
    double exact = 0.0;
    mc::McEstimate est;
    double sigma = 0.0;
    double z = 0.0;
    bool pass = false;
    std::string error;
};

int cmd_validate(const Common &c, const CLI::App &app, double k, std::int64_t samples, const std::string &grid,
                 std::ostream &out)
{
    if (!(k >= 0)) {
        throw UsageError("--k must be >= 0");
    }
    if (samples < mc::kMinSamples) {
        throw UsageError("--samples must be >= " + std::to_string(mc::kMinSamples));
    }
    const std::vector<double> rhos = grid.empty() ? std::vector<double>{0.0, 10.0, 20.0} : parse_grid(grid);
    Common sel = c;
    if (app.count("--topology") == 0) {
        sel.topologies = {"n11", "11n", "1n1"};
    }
    if (app.count("--scheme") == 0) {
        sel.schemes = {"fixed", "variable"};
    }
    if (app.count("--n") == 0) {
        sel.ns = {1, 2, 4};
    }
    std::vector<SystemConfig> variants;
    for (auto cfg : expand(sel)) {
        // Both relay gains of the 1-N-1 variable-gain system unless pinned by --ici.
        if (cfg.topology == Topology::OneNOne && cfg.scheme == Scheme::VariableGain && app.count("--ici") == 0) {
            cfg.ici_at_relay = false;
            variants.push_back(cfg);
            cfg.ici_at_relay = true;
        }
        variants.push_back(cfg);
    }

    std::vector<ValidateRow> rows;
    for (double r : rhos) {
        for (auto cfg : variants) {
            set_rho(cfg, r, 1.0);
            validate_config(cfg);
            ValidateRow row;
            row.cfg = cfg;
            try {
                row.exact = outage_exact(cfg).probability;
                row.est = mc::estimate_outage(cfg, samples, c.seed, mc::Sampler::Vector, {.threads = c.threads});
                const double p = row.exact;
                row.sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(samples));
                const double diff = std::fabs(row.exact - row.est.p_hat);
                row.z = row.sigma > 0 ? diff / row.sigma : (diff > 0 ? std::numeric_limits<double>::infinity() : 0.0);
                row.pass = diff <= k * row.sigma;
            } catch (const std::exception &e) {
                row.error = e.what();
            }
            rows.push_back(row);
        }
    }

    Output o(c.out_path, out);
    std::ostream &os = *o.os;
    os << pad("config", 26) << pad("rho_dB", 8) << pad("exact", 20) << pad("mc", 14) << pad("sigma", 12)
       << pad("z", 11) << "result\n";
    int failures = 0;
    for (const auto &r : rows) {
        os << pad(label(r.cfg), 26) << pad(fmt_short(linear_to_db(r.cfg.rho1)), 8);
        if (!r.error.empty()) {
            os << "ERROR " << r.error << '\n';
            ++failures;
            continue;
        }
        os << pad(fmt_num(r.exact), 20) << pad(fmt_short(r.est.p_hat), 14) << pad(fmt_short(r.sigma), 12)
           << pad(fmt_short(r.z), 11) << (r.pass ? "PASS" : "FAIL") << '\n';
        failures += r.pass ? 0 : 1;
    }

    // With N = 1 every topology is the same link; report how closely the
    // closed forms agree across the three.
    for (double r : rhos) {
        for (const auto &s : sel.schemes) {
            std::vector<double> vals;
            for (const auto &row : rows) {
                if (row.error.empty() && row.cfg.n_antennas == 1 && row.cfg.scheme == parse_scheme(s) &&
                    std::fabs(linear_to_db(row.cfg.rho1) - r) < 1e-9 &&
                    !(row.cfg.topology == Topology::OneNOne && row.cfg.scheme == Scheme::VariableGain &&
                      !row.cfg.ici_at_relay)) {
                    vals.push_back(row.exact);
                }
            }
            if (vals.size() == 3) {
                const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
                const double rel = (*hi - *lo) / std::max(*hi, 1e-300);
                os << "collapse N=1 " << s << " rho=" << fmt_short(r) << " dB: max rel diff " << fmt_short(rel)
                   << (rel <= 1e-10 ? "  exact" : "  MISMATCH") << '\n';
            }
        }
    }

    std::vector<const ValidateRow *> worst;
    for (const auto &r : rows) {
        if (r.error.empty()) {
            worst.push_back(&r);
        }
    }
    std::sort(worst.begin(), worst.end(), [](auto *a, auto *b) { return a->z > b->z; });
    os << "worst offenders:\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(5, worst.size()); ++i) {
        os << "  " << label(worst[i]->cfg) << " rho=" << fmt_short(linear_to_db(worst[i]->cfg.rho1))
           << " dB z=" << fmt_short(worst[i]->z) << '\n';
    }
    os << (failures == 0 ? "PASS" : "FAIL") << ": " << rows.size() - static_cast<std::size_t>(failures) << "/"
       << rows.size() << " within " << fmt_short(k) << " sigma\n";
    o.finish(c.out_path);
    return failures == 0 ? kExitOk : kExitFail;
}

int cmd_slope(const Common &c, const std::string &grid, const std::vector<std::string> &method_names,
              std::ostream &out)
{
    const auto rhos = parse_grid(grid);
    if (rhos.size() < 2) {
        throw UsageError("slope needs at least two grid points");
    }
    const auto methods = parse_methods(method_names);
    if (methods.empty()) {
        throw UsageError("no methods selected");
    }
    Output o(c.out_path, out);
    std::ostream &os = *o.os;
    os << pad("config", 26) << pad("method", 12) << "slope\n";
    for (auto cfg : expand(c)) {
        for (auto m : methods) {
            std::vector<std::pair<double, double>> pts;
            for (double r : rhos) {
                set_rho(cfg, r, c.mu);
                validate_config(cfg);
                check_applicable(cfg, m);
                const auto row = evaluate(cfg, m, c.mc_samples, c.seed, c.threads);
                pts.emplace_back(cfg.rho1, row.probability);
            }
            os << pad(label(cfg), 26) << pad(std::string(to_string(m)), 12)
               << fmt_short(mc::diversity_slope(pts)) << '\n';
        }
    }
    o.finish(c.out_path);
    return kExitOk;
}

int cmd_coeffs(const Common &c, const std::vector<double> &mus, std::ostream &out)
{
    const double ri = db_to_linear(c.rhoi_db);
    Output o(c.out_path, out);
    std::ostream &os = *o.os;
    if (c.csv) {
        os << "n_antennas,mu,rhoi_db,a_n11,a_11n,a_1n1\n";
    } else {
        os << pad("N", 5) << pad("mu", 10) << pad("a_N11", 16) << pad("a_11N", 16) << pad("a_1N1", 16) << "best\n";
    }
    for (int n : c.ns) {
        if (n < 2) {
            throw UsageError("coeffs needs --n >= 2");
        }
        for (double mu : mus) {
            if (!(mu > 0)) {
                throw UsageError("--mu must be > 0");
            }
            const auto r = coefficient_report(n, mu, ri);
            if (c.csv) {
                os << n << ',' << fmt_num(mu) << ',' << fmt_num(linear_to_db(ri)) << ',' << fmt_num(r.a_n11) << ','
                   << fmt_num(r.a_11n) << ',' << fmt_num(r.a_1n1) << '\n';
            } else {
                // Smaller coefficient, lower outage.
                const double best = std::min({r.a_n11, r.a_11n, r.a_1n1});
                const char *name = best == r.a_n11 ? "N11" : (best == r.a_11n ? "11N" : "1N1");
                os << pad(std::to_string(n), 5) << pad(fmt_short(mu), 10) << pad(fmt_short(r.a_n11), 16)
                   << pad(fmt_short(r.a_11n), 16) << pad(fmt_short(r.a_1n1), 16) << name << '\n';
            }
        }
    }
    o.finish(c.out_path);
    return kExitOk;
}

} // namespace

ResultRow evaluate(const SystemConfig &cfg, MethodSel m, std::int64_t mc_samples, std::uint64_t seed,
                   unsigned threads)
{
    ResultRow r;
    r.cfg = cfg;
    r.method = m;
    if (m == MethodSel::MonteCarlo) {
        const auto est = mc::estimate_outage(cfg, mc_samples, seed, mc::Sampler::Vector, {.threads = threads});
        r.method_tag = "monte_carlo";
        r.probability = est.p_hat;
        r.error_or_ci = est.ci_half_width_95;
        r.n_samples = est.n_samples;
        r.seed = est.seed;
        r.warning = !est.ci_reliable;
        return r;
    }
    OutageValue v;
    switch (m) {
    case MethodSel::Exact: v = outage_exact(cfg); break;
    case MethodSel::Lower: v = outage_lower_variable(cfg); break;
    case MethodSel::Asymptotic: v = outage_high_snr(cfg, {.mu = cfg.rho2 / cfg.rho1, .rho1 = cfg.rho1}); break;
    case MethodSel::MonteCarlo: break;
    }
    r.method_tag = std::string(to_string(v.method));
    r.probability = v.probability;
    r.error_or_ci = v.numeric_error;
    r.warning = v.precision_warning;
    return r;
}

void write_csv_header(std::ostream &os)
{
    os << "topology,scheme,ici,n_antennas,rho1_db,rho2_db,rhoi_db,gamma_th_db,method,probability,"
          "numeric_error_or_ci,n_samples,seed\n";
}

void write_csv_row(std::ostream &os, const ResultRow &r)
{
    const auto &c = r.cfg;
    os << to_string(c.topology) << ',' << to_string(c.scheme) << ',' << (c.ici_at_relay ? 1 : 0) << ','
       << c.n_antennas << ',' << fmt_num(linear_to_db(c.rho1)) << ',' << fmt_num(linear_to_db(c.rho2)) << ','
       << fmt_num(linear_to_db(c.rho_i)) << ',' << fmt_num(linear_to_db(c.gamma_th)) << ',' << r.method_tag << ','
       << fmt_num(r.probability) << ',' << fmt_num(r.error_or_ci) << ','
       << (r.n_samples ? std::to_string(*r.n_samples) : std::string()) << ','
       << (r.seed ? std::to_string(*r.seed) : std::string()) << '\n';
}

std::vector<ResultRow> run_sweep(const SweepSpec &spec)
{
    spec.validate();
    std::vector<ResultRow> rows;
    for (double db : spec.rho1_grid_db) {
        SystemConfig cfg = spec.base;
        set_rho(cfg, db, spec.mu);
        for (auto m : spec.methods) {
            rows.push_back(evaluate(cfg, m, spec.mc_samples, spec.seed, spec.threads));
        }
    }
    return rows;
}

std::vector<std::string> preprocess_args(const std::vector<std::string> &args)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto &a = args[i];
        const bool value_flag = a.rfind("--", 0) == 0 && a.find('=') == std::string::npos &&
                                (a.size() > 5 && a.compare(a.size() - 3, 3, "-db") == 0);
        if (value_flag && i + 1 < args.size() && args[i + 1].size() > 1 && args[i + 1][0] == '-' &&
            args[i + 1][1] != '-') {
            out.push_back(a + "=" + args[i + 1]);
            ++i;
            continue;
        }
        out.push_back(a);
    }
    return out;
}

int run(const std::vector<std::string> &args_in, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Outage probability of dual-hop multi-antenna AF relaying with co-channel interference"};
    app.set_config("--config", "", "Flat key=value file mirroring the long flags; flags override it");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    Common c;
    app.add_option("--topology", c.topologies, "n11, 11n or 1n1 (comma list allowed)")->delimiter(',');
    app.add_option("--scheme", c.schemes, "fixed or variable (comma list allowed)")->delimiter(',');
    app.add_flag("--ici", c.ici, "1n1 variable gain: relay gain uses the interference channel");
    app.add_option("--n", c.ns, "Antenna count (comma list allowed)")->delimiter(',');
    app.add_option("--rho1-db", c.rho1_db, "First-hop SNR [dB]")->capture_default_str();
    app.add_option("--rho2-db", c.rho2_db, "Second-hop SNR [dB]; default rho1 + 10 log10(mu)");
    app.add_option("--mu", c.mu, "rho2 / rho1")->capture_default_str();
    app.add_option("--rhoi-db", c.rhoi_db, "Interference-to-noise ratio [dB]; -inf disables")->capture_default_str();
    app.add_option("--gamma-th-db", c.gamma_th_db, "Outage threshold [dB]")->capture_default_str();
    app.add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
    app.add_option("--mc-samples", c.mc_samples, "Monte Carlo samples")->capture_default_str();
    app.add_option("--threads", c.threads, "Worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--out", c.out_path, "Write output to this file instead of stdout");
    app.add_flag("--csv", c.csv, "CSV output (eval, coeffs)");

    auto *eval = app.add_subcommand("eval", "Outage at one operating point");
    bool f_exact = false;
    bool f_lower = false;
    bool f_asym = false;
    bool f_mc = false;
    eval->add_flag("--exact", f_exact, "Exact outage");
    eval->add_flag("--lower", f_lower, "Lower bound (variable gain)");
    eval->add_flag("--asymptotic", f_asym, "High-SNR approximation at mu = rho2 / rho1");
    eval->add_flag("--mc", f_mc, "Monte Carlo estimate");

    auto *sweep = app.add_subcommand("sweep", "CSV over a rho1 grid with rho2 = mu rho1");
    std::string sweep_grid = "0:5:40";
    std::vector<std::string> sweep_methods{"exact"};
    sweep->add_option("--grid", sweep_grid, "rho1 grid [dB]: start:step:stop or a comma list")->capture_default_str();
    sweep->add_option("--methods", sweep_methods, "exact, lower, asymptotic, mc")->delimiter(',');

    auto *validate = app.add_subcommand("validate", "Exact outage against vector-level Monte Carlo");
    double k_sigma = 4.0;
    std::int64_t val_samples = 1'000'000;
    std::string val_grid;
    validate->add_option("--k", k_sigma, "Tolerance in binomial standard deviations")->capture_default_str();
    validate->add_option("--samples", val_samples, "Monte Carlo samples per point")->capture_default_str();
    validate->add_option("--grid", val_grid, "rho1 = rho2 grid [dB], default 0,10,20");

    auto *slope = app.add_subcommand("slope", "Diversity order from the log-log slope");
    std::string slope_grid = "30,40,50";
    std::vector<std::string> slope_methods{"exact"};
    slope->add_option("--grid", slope_grid, "rho1 grid [dB]")->capture_default_str();
    slope->add_option("--methods", slope_methods, "exact, lower, asymptotic, mc")->delimiter(',');

    auto *coeffs = app.add_subcommand("coeffs", "High-SNR fixed-gain coefficients per topology");
    std::vector<double> mus{1.0};
    coeffs->add_option("--mu", mus, "rho2 / rho1 (comma list allowed)")->delimiter(',');

    for (auto *sub : {eval, sweep, validate, slope, coeffs}) {
        sub->fallthrough();
    }

    std::vector<std::string> args = preprocess_args(args_in);
    if (!args.empty()) {
        args.erase(args.begin());
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (eval->parsed()) {
            std::vector<MethodSel> m;
            if (f_exact) {
                m.push_back(MethodSel::Exact);
            }
            if (f_lower) {
                m.push_back(MethodSel::Lower);
            }
            if (f_asym) {
                m.push_back(MethodSel::Asymptotic);
            }
            if (f_mc) {
                m.push_back(MethodSel::MonteCarlo);
            }
            return cmd_eval(c, m, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(c, sweep_grid, sweep_methods, out);
        }
        if (validate->parsed()) {
            if (app.count("--mc-samples") > 0) {
                val_samples = validate->count("--samples") > 0 ? val_samples : c.mc_samples;
            }
            return cmd_validate(c, app, k_sigma, val_samples, val_grid, out);
        }
        if (slope->parsed()) {
            return cmd_slope(c, slope_grid, slope_methods, out);
        }
        if (coeffs->parsed()) {
            if (app.count("--mu") > 0 && coeffs->count("--mu") == 0) {
                mus = {c.mu};
            }
            return cmd_coeffs(c, mus, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n\n" << app.help() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}

} // namespace afrelay::cli
