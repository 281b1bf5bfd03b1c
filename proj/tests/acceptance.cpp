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


// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rayprod/cdf_model.hpp"
#include "rayprod/moments.hpp"
#include "rayprod/montecarlo.hpp"
#include "rayprod/outage.hpp"
#include "rayprod/special_functions.hpp"

using namespace rayprod;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char *title, double limit_seconds, const std::function<Outcome()> &body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
        o = body();
    }
    catch (const std::exception &e)
    {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && secs >= limit_seconds)
    {
        o.pass = false;
        o.detail += "; runtime over " + std::to_string(static_cast<int>(limit_seconds)) + " s";
    }
    std::printf("%s criterion %d: %s [%s; %.2f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass)
        ++failures;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

void all_dims(int max_k, int max_n, const std::function<void(const std::vector<int> &)> &visit)
{
    std::vector<int> d;
    std::function<void()> rec = [&] {
        if (d.size() >= 2)
            visit(d);
        if (static_cast<int>(d.size()) == max_n + 1)
            return;
        for (int k = 1; k <= max_k; ++k)
        {
            d.push_back(k);
            rec();
            d.pop_back();
        }
    };
    rec();
}

Outcome route_agreement()
{
    double worst_closed = 0, worst_mgf = 0;
    int configs = 0;
    all_dims(8, 3, [&](const std::vector<int> &d) {
        const ChannelConfig c(d);
        ++configs;
        for (int m = 1; m <= 3; ++m)
            worst_closed = std::max(worst_closed, rel(exact_moment(c, m), closed_form_moment(c, m)));
        const auto series = mgf_moments(c, 6);
        for (int m = 1; m <= 6; ++m)
            worst_mgf = std::max(worst_mgf, rel(exact_moment(c, m), series[static_cast<std::size_t>(m)]));
    });
    return {worst_closed <= 1e-8 && worst_mgf <= 1e-8, std::to_string(configs) + " configs, closed-form max rel " +
                                                           num(worst_closed) + ", mgf max rel " + num(worst_mgf)};
}

Outcome permutation_invariance()
{
    std::mt19937 gen(2024);
    std::uniform_int_distribution<int> len(2, 5), dim(1, 8);
    double worst = 0;
    long evaluations = 0;
    for (int rep = 0; rep < 50; ++rep)
    {
        std::vector<int> d(static_cast<std::size_t>(len(gen)));
        for (auto &k : d)
            k = dim(gen);
        const ChannelConfig base(d);
        double ref[5];
        for (int m = 1; m <= 4; ++m)
            ref[m] = exact_moment(base, m);
        std::sort(d.begin(), d.end());
        do
        {
            for (int m = 1; m <= 4; ++m)
            {
                worst = std::max(worst, rel(exact_moment(ChannelConfig(d), m), ref[m]));
                ++evaluations;
            }
        } while (std::next_permutation(d.begin(), d.end()));
    }
    return {worst <= 1e-9, "50 configs, " + std::to_string(evaluations) + " evaluations, max rel " + num(worst)};
}

Outcome n1_exactness()
{
    double worst_ab = 0, worst_w = 0, worst_cdf = 0;
    int configs = 0;
    for (int k0 = 1; k0 <= 64; ++k0)
        for (int k1 = 1; k0 * k1 <= 64; ++k1)
        {
            ++configs;
            const auto model = fit(moment_set(ChannelConfig({k0, k1}), kDefaultMatchedMoments));
            const double a = k0 * k1;
            worst_ab = std::max({worst_ab, rel(model.alpha(), a), std::abs(model.beta() - 1.0)});
            for (std::size_t i = 3; i < model.weights().size(); ++i)
                worst_w = std::max(worst_w, std::abs(model.weights()[i]));
            const double top = a + 10 * std::sqrt(a);
            for (int k = 0; k < 100; ++k)
            {
                const double x = top * k / 99;
                worst_cdf = std::max(worst_cdf, std::abs(model.raw(x) - reg_lower_gamma(a, x)));
            }
        }
    return {worst_ab <= 1e-9 && worst_w <= 1e-8 && worst_cdf <= 1e-10,
            std::to_string(configs) + " configs, alpha/beta max err " + num(worst_ab) + ", max |w_i| " +
                num(worst_w) + ", cdf sup " + num(worst_cdf)};
}

Outcome monte_carlo_agreement()
{
    const ChannelConfig c({2, 6, 8, 4});
    const Ecdf ecdf(sample_frobenius(c, 1'000'000, 0));
    const auto q6 = fit(moment_set(c, 6));
    const auto q2 = fit(moment_set(c, 2));
    const double d6 = ks_distance(ecdf, [&](double x) { return cdf(q6, x).regularized; });
    const double d2 = ks_distance(ecdf, [&](double x) { return cdf(q2, x).regularized; });
    return {d6 <= 0.02 && d2 > d6, "10^6 draws, sup distance q=6 " + num(d6) + ", q=2 " + num(d2)};
}

Outcome fig3_crossing()
{
    const OstbcScheme scheme = OstbcScheme::make(3, 4, 4);
    std::vector<ChannelConfig> family;
    for (int clusters = 0; clusters <= 3; ++clusters)
    {
        std::vector<int> d{4};
        d.insert(d.end(), static_cast<std::size_t>(clusters), 8);
        d.push_back(4);
        family.emplace_back(d);
    }
    std::vector<GammaLaguerreModel> models;
    for (const auto &c : family)
        models.push_back(fit(moment_set(c, 6)));

    // Compare only where both curves are away from the 0/1 plateaus.
    constexpr double lo = 1e-4, hi = 1 - 1e-4;
    bool ok = true;
    std::string detail;
    for (std::size_t a = 0; a < family.size(); ++a)
        for (std::size_t b = a + 1; b < family.size(); ++b)
        {
            std::vector<double> diff, zs;
            for (int k = 0; k <= 4000; ++k)
            {
                const double z = k * 0.001;
                const double pa = outage_probability(models[a], scheme, family[a], 1.0, z);
                const double pb = outage_probability(models[b], scheme, family[b], 1.0, z);
                if (pa < lo || pa > hi || pb < lo || pb > hi)
                    continue;
                diff.push_back(pb - pa); // deeper channel minus shallower
                zs.push_back(z);
            }
            int changes = 0;
            double cross = NAN;
            for (std::size_t i = 1; i < diff.size(); ++i)
                if ((diff[i] > 0) != (diff[i - 1] > 0))
                {
                    ++changes;
                    cross = zs[i];
                }
            const bool pair_ok = !diff.empty() && diff.front() > 0 && diff.back() < 0 && changes == 1;
            ok = ok && pair_ok;
            if (!detail.empty())
                detail += ", ";
            detail += "n" + std::to_string(family[a].n()) + "/n" + std::to_string(family[b].n()) + " z*=" +
                      (pair_ok ? num(cross) : std::string("none")) + (pair_ok ? "" : " (changes " + std::to_string(changes) + ")");
        }
    return {ok, detail};
}

Outcome variance_claims()
{
    double worst = 0;
    bool positive = true, unit_mean = true;
    int steps = 0;
    std::vector<std::vector<int>> configs{{4, 8, 8, 8, 4}, {2, 7, 8, 4}, {2, 3}, {1, 1, 1, 1, 1, 1}, {8, 2, 5, 3, 7}};
    all_dims(4, 3, [&](const std::vector<int> &d) { configs.push_back(d); });
    for (const auto &d : configs)
    {
        const ChannelConfig c(d);
        for (const auto &s : variance_recursion(c, c.n()))
        {
            ++steps;
            positive = positive && s.increment > 0;
            unit_mean = unit_mean && s.mean == 1.0 &&
                        exact_moment(c.prefix(s.n), 1) / (c.transmit() * c.prefix(s.n).normalization()) == 1.0;
            worst = std::max(worst, rel(s.variance, s.variance_from_moments));
        }
    }
    return {positive && unit_mean && worst <= 1e-10,
            std::to_string(steps) + " steps, increments " + (positive ? "all > 0" : "NOT all > 0") +
                ", E[Y_n] " + (unit_mean ? "= 1" : "!= 1") + ", max rel " + num(worst)};
}

Outcome rayleigh_limit()
{
    RayleighLimitQuery q;
    q.tx_antennas = 2;
    q.rx_antennas = 4;
    q.ratios = {1.0, 4.0 / 3.0};
    q.count = 10000;
    q.seed = 0;
    std::vector<double> d;
    std::string detail;
    for (int k : {10, 100, 1000})
    {
        q.scatterers = k;
        d.push_back(rayleigh_limit_distance(q));
        detail += (detail.empty() ? "" : ", ") + std::string("K'=") + std::to_string(k) + " (" +
                  rayleigh_family_config(q).to_string() + ") KS " + num(d.back());
    }
    return {d[1] < d[0] && d[2] < d[1], detail};
}

Outcome fig4_slope()
{
    bool ok = true;
    std::string detail;
    std::vector<double> c40;
    for (int k0 : {2, 4, 8})
    {
        const ChannelConfig c({k0, 7, 8, 4});
        const OstbcScheme s = ostbc_catalog(k0);
        const auto model = fit(moment_set(c, 6));
        const double cap30 = outage_capacity(model, s, c, db_to_linear(30), 0.05);
        const double cap40 = outage_capacity(model, s, c, db_to_linear(40), 0.05);
        const double slope = (cap40 - cap30) / 10;
        const double expected = s.rate() * std::log(10.0) / 10;
        const double err = rel(slope, expected);
        ok = ok && err <= 0.05;
        c40.push_back(cap40);
        detail += (detail.empty() ? "" : ", ") + std::string("K0=") + std::to_string(k0) + " slope " + num(slope) +
                  " vs " + num(expected) + " (" + num(100 * err) + "%)";
    }
    const bool dominates = c40[0] > c40[1] && c40[0] > c40[2];
    detail += ", C(40 dB) " + num(c40[0]) + " / " + num(c40[1]) + " / " + num(c40[2]);
    return {ok && dominates, detail};
}

Outcome determinant_identities()
{
    double worst_bordered = 0, worst_hankel = 0;
    for (int k0 = 1; k0 <= 6; ++k0)
        for (int nu = 0; nu <= 4; ++nu)
        {
            worst_hankel = std::max(worst_hankel, hankel_gamma_determinant(k0, nu).relative_error());
            for (int m = 0; m <= 6; ++m)
                worst_bordered = std::max(worst_bordered, bordered_hankel_determinant(k0, nu, m).relative_error());
        }
    return {worst_bordered <= 1e-9 && worst_hankel <= 1e-9,
            "bordered Hankel max rel " + num(worst_bordered) + ", Hankel max rel " + num(worst_hankel)};
}

} // namespace

int main()
{
    report(1, "moment routes agree (n <= 3, K_i <= 8)", 60, route_agreement);
    report(2, "moments invariant under dimension permutations", 0, permutation_invariance);
    report(3, "n = 1 model is the exact Gamma law", 0, n1_exactness);
    report(4, "model vs Monte-Carlo ECDF for [2,6,8,4]", 120, monte_carlo_agreement);
    report(5, "outage curves of [4,...,4] cross once", 0, fig3_crossing);
    report(6, "variance increments positive and consistent", 0, variance_claims);
    report(7, "Rayleigh limit: KS distance decreases in K'", 120, rayleigh_limit);
    report(8, "high-SNR outage capacity slope equals the code rate", 0, fig4_slope);
    report(9, "determinant identities", 0, determinant_identities);
    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", failures);
    return failures == 0 ? 0 : 1;
}
