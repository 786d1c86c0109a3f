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

#include "afrelay/quadrature.hpp"

#include <cstdlib>
#include <string>

namespace afrelay::quad {

namespace {

double env_positive(const char *name, double fallback)
{
    const char *raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    char *end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be a positive number, got '" + raw + "'");
    }
    return v;
}

} // namespace

QuadOptions default_options()
{
    static const QuadOptions opts = [] {
        QuadOptions o;
        o.abs_tol = env_positive("AFRELAY_QUAD_ABS_TOL", o.abs_tol);
        o.rel_tol = env_positive("AFRELAY_QUAD_REL_TOL", o.rel_tol);
        return o;
    }();
    return opts;
}

} // namespace afrelay::quad
