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

#ifndef AFRELAY_DETAIL_REAL_MATH_HPP
#define AFRELAY_DETAIL_REAL_MATH_HPP

// Elementary functions and limits for the floating types the analytic engine
// is instantiated with: double, long double and, where the compiler has it,
// __float128 (via libquadmath; needs GNU extensions, e.g. -std=gnu++20).

#include <cmath>
#include <limits>

#if defined(__SIZEOF_FLOAT128__) && defined(__GNUC__) && !defined(__clang__) && !defined(__STRICT_ANSI__) && !defined(AFRELAY_NO_FLOAT128)
#define AFRELAY_HAVE_FLOAT128 1
#include <quadmath.h>
#endif

namespace afrelay::detail::rmath {

template <class Real>
struct limits {
    static constexpr Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
    static constexpr Real min() { return std::numeric_limits<Real>::min(); }
    static constexpr Real pi() { return static_cast<Real>(3.14159265358979323846264338327950288L); }
    static constexpr Real euler_gamma() { return static_cast<Real>(0.577215664901532860606512090082402431L); }
};

inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double fabs(double x) { return std::fabs(x); }
inline double lgamma(double x) { return std::lgamma(x); }
inline double pow(double x, double y) { return std::pow(x, y); }

inline long double exp(long double x) { return std::exp(x); }
inline long double log(long double x) { return std::log(x); }
inline long double sqrt(long double x) { return std::sqrt(x); }
inline long double fabs(long double x) { return std::fabs(x); }
inline long double lgamma(long double x) { return std::lgamma(x); }
inline long double pow(long double x, long double y) { return std::pow(x, y); }

#ifdef AFRELAY_HAVE_FLOAT128
// Q literals are a GNU extension; keep -Wpedantic quiet about them.
#pragma GCC system_header
using float128 = __float128;

template <>
struct limits<float128> {
    static constexpr float128 epsilon() { return FLT128_EPSILON; }
    static constexpr float128 min() { return FLT128_MIN; }
    static constexpr float128 pi() { return M_PIq; }
    static constexpr float128 euler_gamma() { return 0.577215664901532860606512090082402431Q; }
};

inline float128 exp(float128 x) { return expq(x); }
inline float128 log(float128 x) { return logq(x); }
inline float128 sqrt(float128 x) { return sqrtq(x); }
inline float128 fabs(float128 x) { return fabsq(x); }
inline float128 lgamma(float128 x) { return lgammaq(x); }
inline float128 pow(float128 x, float128 y) { return powq(x, y); }
#endif

} // namespace afrelay::detail::rmath

#endif
