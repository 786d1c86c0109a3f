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

#ifndef AFRELAY_CLI_HPP
#define AFRELAY_CLI_HPP

// Command-line front end: eval, sweep, validate, slope and coeffs. Kept in the
// library so tests can drive it without spawning a process.

#include "afrelay/analytic.hpp"
#include "afrelay/model.hpp"
#include "afrelay/montecarlo.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace afrelay::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags or values; maps to kExitUsage.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class MethodSel { Exact, Lower, Asymptotic, MonteCarlo };

std::string_view to_string(MethodSel m);
/// Accepts exact, lower, asymptotic (or asym), mc. Throws UsageError.
MethodSel parse_method(std::string_view s);

/// 10^(db/10); "-inf" gives 0. Throws UsageError on anything unparseable.
double db_to_linear(std::string_view db);
double linear_to_db(double lin);

struct SweepSpec {
    SystemConfig base;
    std::vector<double> rho1_grid_db;
    /// rho2 = mu rho1 at every grid point.
    double mu = 1.0;
    std::vector<MethodSel> methods;
    std::int64_t mc_samples = mc::kDefaultSamples;
    std::uint64_t seed = 1;
    unsigned threads = 0;

    /// Nonempty strictly increasing grid, nonempty methods, mu > 0. Throws UsageError.
    void validate() const;
};

/// One evaluated (config, method) pair.
struct ResultRow {
    SystemConfig cfg;
    MethodSel method = MethodSel::Exact;
    /// Tag written to the CSV: the analytic method name or "monte_carlo".
    std::string method_tag;
    double probability = 0.0;
    /// Quadrature / round-off estimate for analytic rows, 95% half-width for MC.
    double error_or_ci = 0.0;
    std::optional<std::int64_t> n_samples;
    std::optional<std::uint64_t> seed;
    bool warning = false;
};

/// Evaluates one method at one configuration. Formula-domain problems surface
/// as std::domain_error / std::invalid_argument from the engine.
ResultRow evaluate(const SystemConfig &cfg, MethodSel m, std::int64_t mc_samples, std::uint64_t seed,
                   unsigned threads = 0);

void write_csv_header(std::ostream &os);
void write_csv_row(std::ostream &os, const ResultRow &r);

/// Rows in grid order, methods in the order given.
std::vector<ResultRow> run_sweep(const SweepSpec &spec);

/// Joins "--flag -inf" style pairs into "--flag=-inf" so negative dB values are
/// not mistaken for options.
std::vector<std::string> preprocess_args(const std::vector<std::string> &args);

/// Full command line (args[0] is the program name). Returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace afrelay::cli

#endif
