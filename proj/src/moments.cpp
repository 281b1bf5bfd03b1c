// SPDX-License-Identifier: Apache-2.0
//
// rayprod: outage analysis for products of complex Gaussian MIMO channels
// Copyright (C) 2026 The rayprod authors
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


#include "rayprod/moments.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "rayprod/errors.hpp"
#include "rayprod/special_functions.hpp"

namespace rayprod
{

std::string to_string(MomentMethod method)
{
    switch (method)
    {
    case MomentMethod::exact_partition:
        return "exact_partition";
    case MomentMethod::closed_form:
        return "closed_form";
    case MomentMethod::mgf_series:
        return "mgf_series";
    case MomentMethod::leading_order:
        return "leading_order";
    }
    return "unknown";
}

MomentMethod moment_method_from_string(const std::string &name)
{
    for (auto m : {MomentMethod::exact_partition, MomentMethod::closed_form, MomentMethod::mgf_series,
                   MomentMethod::leading_order})
        if (to_string(m) == name)
            return m;
    throw ParameterError("unknown moment method '" + name + "'");
}

std::uint64_t composition_count(int m, int k)
{
    if (m < 0 || k < 1)
        return 0;
    // C(m+k-1, r) with r = min(m, k-1), built incrementally so every partial
    // value is itself a binomial coefficient.
    const int total = m + k - 1;
    const int r = std::min(m, k - 1);
    unsigned __int128 c = 1;
    for (int i = 1; i <= r; ++i)
    {
        c = c * static_cast<unsigned>(total - r + i) / static_cast<unsigned>(i);
        if (c > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(c);
}

namespace
{

using Real = long double;

void check_order(int m)
{
    if (m < 0)
        throw ParameterError("moment order must be nonnegative");
}

// Visits weak compositions of `total` into parts.size() parts in
// lexicographic order.
template <typename Visit> void for_each_composition(std::vector<int> &parts, int total, Visit &&visit)
{
    const int k = static_cast<int>(parts.size());
    if (k == 1)
    {
        parts[0] = total;
        visit(parts);
        return;
    }
    std::vector<int> remaining(k, 0);
    int depth = 0;
    remaining[0] = total;
    parts[0] = 0;
    while (depth >= 0)
    {
        if (depth == k - 1)
        {
            parts[depth] = remaining[depth];
            visit(parts);
            --depth;
            if (depth >= 0)
                ++parts[depth];
            continue;
        }
        if (parts[depth] > remaining[depth])
        {
            --depth;
            if (depth >= 0)
                ++parts[depth];
            continue;
        }
        remaining[depth + 1] = remaining[depth] - parts[depth];
        ++depth;
        parts[depth] = 0;
    }
}

} // namespace

PartitionSumStats exact_moment_stats(const ChannelConfig &config, int m)
{
    check_order(m);
    PartitionSumStats stats;
    if (m == 0)
    {
        stats.value = 1.0;
        return stats;
    }
    if (m > kExactMomentMaxOrder)
        throw ResourceError("exact_moment: order " + std::to_string(m) + " exceeds " +
                            std::to_string(kExactMomentMaxOrder) + "; use leading_order_moment");

    const std::vector<int> nu = config.nu();
    const std::vector<int> dims = config.canonical_dims();
    const int k0 = dims.front();
    const int n = config.n();
    if (composition_count(m, k0) > kExactMomentMaxCompositions)
        throw ResourceError("exact_moment: " + std::to_string(composition_count(m, k0)) +
                            " compositions exceed the guard; use leading_order_moment");

    // per_part[j-1][a] = sum_{i=1}^n lnGamma(j+a+nu_i) - lnGamma(a+1) - sum_{i=2}^n lnGamma(j+nu_i)
    std::vector<std::vector<Real>> per_part(k0, std::vector<Real>(m + 1));
    for (int j = 1; j <= k0; ++j)
    {
        Real fixed = 0;
        for (int i = 2; i <= n; ++i)
            fixed += log_gamma(static_cast<Real>(j + nu[i]));
        for (int a = 0; a <= m; ++a)
        {
            Real v = -log_gamma(static_cast<Real>(a + 1)) - fixed;
            for (int i = 1; i <= n; ++i)
                v += log_gamma(static_cast<Real>(j + a + nu[i]));
            per_part[j - 1][a] = v;
        }
    }
    // ln of integers 1 .. m+k0 for the Vandermonde-type factor.
    std::vector<Real> log_int(m + k0 + 1, 0);
    for (int v = 1; v <= m + k0; ++v)
        log_int[v] = std::log(static_cast<Real>(v));

    Real log_norm = log_gamma(static_cast<Real>(m + 1));
    for (int j = 1; j <= k0; ++j)
        log_norm -= log_gamma(static_cast<Real>(j)) + log_gamma(static_cast<Real>(j + nu[1]));

    SignedLogSum<Real> sum;
    std::vector<int> parts(k0, 0);
    for_each_composition(parts, m, [&](const std::vector<int> &a) {
        ++stats.compositions;
        int sign = 1;
        Real log_mag = 0;
        for (int i = 0; i < k0; ++i)
        {
            for (int j = i + 1; j < k0; ++j)
            {
                const int factor = a[j] - a[i] + (j - i);
                if (factor == 0)
                    return;
                if (factor < 0)
                    sign = -sign;
                log_mag += log_int[std::abs(factor)];
            }
        }
        for (int j = 0; j < k0; ++j)
            log_mag += per_part[j][a[j]];
        ++stats.nonzero_terms;
        sum.add(BasicLogSigned<Real>::from_log(log_mag + log_norm, sign));
    });

    const BasicLogSigned<Real> total = sum.result();
    if (total.sign <= 0)
        throw NumericError("exact_moment: partition sum is not positive for " + config.to_string());
    stats.value = static_cast<double>(total.value());
    return stats;
}

double exact_moment(const ChannelConfig &config, int m) { return exact_moment_stats(config, m).value; }

double closed_form_moment(const ChannelConfig &config, int m)
{
    const auto &dims = config.dims();
    auto prod = [&](auto f) {
        double p = 1;
        for (int k : dims)
            p *= f(static_cast<double>(k));
        return p;
    };
    const double mean = prod([](double k) { return k; });
    switch (m)
    {
    case 1:
        return mean;
    case 2:
        return mean / 2 * (prod([](double k) { return k + 1; }) + prod([](double k) { return k - 1; }));
    case 3:
        return mean / 6 *
               (prod([](double k) { return (k + 2) * (k + 1); }) +
                4 * prod([](double k) { return (k + 1) * (k - 1); }) +
                prod([](double k) { return (k - 1) * (k - 2); }));
    default:
        throw ParameterError("closed_form_moment: order must be 1, 2 or 3");
    }
}

namespace
{

using Quad = __float128;
using Series = std::vector<Quad>; // coefficients of s^0 .. s^m

Quad quad_abs(Quad x) { return x < 0 ? -x : x; }

Series series_mul(const Series &a, const Series &b)
{
    const std::size_t len = a.size();
    Series out(len, 0);
    for (std::size_t i = 0; i < len; ++i)
    {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; i + j < len; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

Series series_div(const Series &a, const Series &b)
{
    const std::size_t len = a.size();
    Series out(len, 0);
    for (std::size_t k = 0; k < len; ++k)
    {
        Quad v = a[k];
        for (std::size_t j = 1; j <= k; ++j)
            v -= b[j] * out[k - j];
        out[k] = v / b[0];
    }
    return out;
}

// Gamma(n) for a positive integer, and (a)_t for a positive integer base.
Quad gamma_integer(int n)
{
    Quad v = 1;
    for (int k = 2; k < n; ++k)
        v *= k;
    return v;
}

Quad pochhammer_integer(int a, int t)
{
    Quad v = 1;
    for (int i = 0; i < t; ++i)
        v *= a + i;
    return v;
}

} // namespace

std::vector<double> mgf_moments(const ChannelConfig &config, int m)
{
    check_order(m);
    const std::vector<int> nu = config.nu();
    const int k0 = config.k_min();
    const int n = config.n();
    if (m > kMgfMaxOrder || k0 > kMgfMaxSize)
        throw ResourceError("mgf_moment: needs order <= " + std::to_string(kMgfMaxOrder) +
                            " and smallest dimension <= " + std::to_string(kMgfMaxSize) +
                            "; use exact_moment or leading_order_moment");

    const std::size_t len = static_cast<std::size_t>(m) + 1;
    // entry(i,j) = sum_t Gamma(i+j+nu1+t-1) prod_{q=2}^{n} (j+nu_q)_t s^t / t!
    std::vector<std::vector<Series>> a(k0, std::vector<Series>(k0, Series(len)));
    for (int i = 1; i <= k0; ++i)
    {
        for (int j = 1; j <= k0; ++j)
        {
            for (int t = 0; t <= m; ++t)
            {
                Quad c = gamma_integer(i + j + nu[1] + t - 1) / gamma_integer(t + 1);
                for (int q = 2; q <= n; ++q)
                    c *= pochhammer_integer(j + nu[q], t);
                a[i - 1][j - 1][t] = c;
            }
        }
    }

    Series det(len, 0);
    det[0] = 1;
    for (int k = 0; k < k0; ++k)
    {
        int pivot = k;
        for (int i = k + 1; i < k0; ++i)
            if (quad_abs(a[i][k][0]) > quad_abs(a[pivot][k][0]))
                pivot = i;
        if (a[pivot][k][0] == 0)
            throw NumericError("mgf_moment: singular constant-term matrix");
        if (pivot != k)
        {
            std::swap(a[pivot], a[k]);
            for (auto &c : det)
                c = -c;
        }
        for (int i = k + 1; i < k0; ++i)
        {
            const Series factor = series_div(a[i][k], a[k][k]);
            for (int j = k + 1; j < k0; ++j)
            {
                const Series update = series_mul(factor, a[k][j]);
                for (std::size_t t = 0; t < len; ++t)
                    a[i][j][t] -= update[t];
            }
        }
        det = series_mul(det, a[k][k]);
    }

    Quad norm = 1;
    for (int j = 1; j <= k0; ++j)
        norm *= gamma_integer(j) * gamma_integer(j + nu[1]);

    std::vector<double> out(len);
    Quad factorial = 1;
    for (std::size_t t = 0; t < len; ++t)
    {
        if (t > 0)
            factorial *= static_cast<int>(t);
        out[t] = static_cast<double>(factorial * det[t] / norm);
    }
    return out;
}

double mgf_moment(const ChannelConfig &config, int m) { return mgf_moments(config, m).back(); }

double leading_order_moment(const ChannelConfig &config, int m)
{
    if (m < 1)
        throw ParameterError("leading_order_moment: order must be positive");
    double log_value = -log_gamma(static_cast<double>(m + 1));
    for (int k : config.dims())
        log_value += pochhammer_log(k, static_cast<unsigned>(m)).log_magnitude;
    return std::exp(log_value);
}

MomentSet moment_set(const ChannelConfig &config, int q, MomentPolicy policy)
{
    if (q < 1)
        throw ParameterError("moment_set: q must be positive");
    MomentSet set{config, q, {}, {}};
    for (int m = 1; m <= q; ++m)
    {
        if (policy == MomentPolicy::leading_order_only)
        {
            set.values.push_back(leading_order_moment(config, m));
            set.methods.push_back(MomentMethod::leading_order);
            continue;
        }
        try
        {
            set.values.push_back(exact_moment(config, m));
            set.methods.push_back(MomentMethod::exact_partition);
        }
        catch (const ResourceError &)
        {
            if (policy == MomentPolicy::exact_only)
                throw;
            set.values.push_back(leading_order_moment(config, m));
            set.methods.push_back(MomentMethod::leading_order);
        }
    }
    return set;
}

} // namespace rayprod
