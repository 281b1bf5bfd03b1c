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


#include <doctest.h>

#include <cmath>

#include "rayprod/cdf_model.hpp"
#include "rayprod/errors.hpp"
#include "rayprod/montecarlo.hpp"
#include "rayprod/special_functions.hpp"

#ifdef RAYPROD_HAVE_BOOST
#include <boost/math/special_functions/gamma.hpp>
#endif

using namespace rayprod;

namespace
{

GammaLaguerreModel model_of(std::vector<int> dims, int q = kDefaultMatchedMoments)
{
    return fit(moment_set(ChannelConfig(std::move(dims)), q));
}

#ifdef RAYPROD_HAVE_BOOST
// Correction term written exactly as the textbook double sum, with weights
// w_i = sum_l (-1)^l i! E[X^l] / ((i-l)! l! Gamma(alpha+l) beta^l).
long double literal_correction(const MomentSet &moments, long double alpha, long double beta, double x)
{
    using std::lgamma;
    auto fact = [](int k) { return std::tgamma(static_cast<long double>(k) + 1); };
    long double eps = 0;
    for (int i = 3; i <= moments.q; ++i)
    {
        long double w = 0;
        for (int l = 0; l <= i; ++l)
            w += ((l % 2) ? -1 : 1) * fact(i) * moments.moment(l) /
                 (fact(i - l) * fact(l) * std::tgamma(alpha + l) * std::pow(beta, static_cast<long double>(l)));
        long double inner = 0;
        for (int j = 0; j <= i; ++j)
            inner += ((j % 2) ? -1 : 1) * std::tgamma(alpha + i) / (fact(i - j) * fact(j)) *
                     boost::math::gamma_p(alpha + j, static_cast<long double>(x) / beta);
        eps += w * inner;
    }
    return eps;
}
#endif

} // namespace

TEST_CASE("fit examples")
{
    const auto n1 = model_of({2, 3});
    CHECK(n1.alpha() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(n1.beta() == doctest::Approx(1.0).epsilon(1e-12));

    const MomentSet gamma_law{ChannelConfig({1, 1}), 2, {6.0, 54.0}, {}};
    const auto g = fit(gamma_law);
    CHECK(g.alpha() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(g.beta() == doctest::Approx(3.0).epsilon(1e-14));

    const auto m = model_of({2, 3, 4});
    CHECK(m.alpha() == doctest::Approx(576.0 / 216.0).epsilon(1e-14));
    CHECK(m.beta() == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("fit errors")
{
    CHECK_THROWS_AS(fit(moment_set(ChannelConfig({2, 3}), 1)), FitError);
    const MomentSet flat{ChannelConfig({1, 1}), 2, {2.0, 4.0}, {}};
    CHECK_THROWS_AS(fit(flat), FitError);
}

TEST_CASE("first two weights vanish")
{
    for (auto dims : std::vector<std::vector<int>>{{2, 3}, {2, 3, 4}, {1, 1, 1, 1}, {2, 6, 8, 4}, {4, 8, 8, 4}})
    {
        const auto m = model_of(dims);
        CAPTURE(ChannelConfig(dims).to_string());
        CHECK(std::abs(m.weights()[0] - std::exp(-log_gamma(m.alpha()))) <= 1e-12);
        CHECK(std::abs(m.weights()[1]) <= 1e-10);
        CHECK(std::abs(m.weights()[2]) <= 1e-10);
    }
}

TEST_CASE("n = 1 models are exact Gamma laws")
{
    for (int k0 = 1; k0 <= 8; ++k0)
        for (int k1 = 1; k0 * k1 <= 64; ++k1)
        {
            const auto m = model_of({k0, k1});
            const double a = k0 * k1;
            CHECK(m.alpha() == doctest::Approx(a).epsilon(1e-12));
            CHECK(m.beta() == doctest::Approx(1.0).epsilon(1e-12));
            for (std::size_t i = 3; i < m.weights().size(); ++i)
                CHECK(std::abs(m.weights()[i]) <= 1e-8);
            double worst = 0;
            const double top = a + 10 * std::sqrt(a);
            for (int k = 0; k < 100; ++k)
            {
                const double x = top * k / 99;
                worst = std::max(worst, std::abs(m.raw(x) - reg_lower_gamma(a, x)));
            }
            CHECK(worst <= (a <= 16 ? 1e-12 : 1e-10));
        }
}

#ifdef RAYPROD_HAVE_BOOST
TEST_CASE("correction term against the literal double sum")
{
    for (auto dims : std::vector<std::vector<int>>{{2, 3, 4}, {1, 2, 2}, {2, 2, 3, 2}, {3, 5, 4}})
    {
        const MomentSet s = moment_set(ChannelConfig(dims), 6);
        const auto m = fit(s);
        for (int k = 0; k <= 40; ++k)
        {
            const double x = (m.mean() + 5 * m.stddev()) * k / 40;
            const double oracle =
                static_cast<double>(literal_correction(s, m.alpha(), m.beta(), x));
            CAPTURE(x);
            CHECK(m.correction(x) == doctest::Approx(oracle).epsilon(1e-9).scale(1e-3));
        }
    }
}
#endif

TEST_CASE("q = 2 is the plain Gamma base")
{
    const auto m = model_of({2, 6, 8, 4}, 2);
    for (double x : {0.0, 50.0, 200.0, 400.0})
    {
        CHECK(m.correction(x) == 0.0);
        CHECK(m.raw(x) == doctest::Approx(reg_lower_gamma(m.alpha(), x / m.beta())).epsilon(1e-15));
    }
}

TEST_CASE("regularized cdf is a distribution function")
{
    for (auto dims : std::vector<std::vector<int>>{{2, 3, 4}, {1, 1, 1, 1, 1}, {4, 8, 8, 8, 4}, {2, 6, 8, 4}})
    {
        const auto m = model_of(dims);
        CHECK(cdf(m, 0.0).raw == 0.0);
        CHECK(cdf(m, 0.0).regularized == 0.0);
        double prev = 0;
        const double top = m.mean() + 20 * m.stddev();
        for (int k = 0; k <= 2000; ++k)
        {
            const CdfValue v = cdf(m, top * k / 2000);
            CHECK(v.regularized >= prev);
            CHECK(v.regularized <= 1.0);
            prev = v.regularized;
        }
        CHECK(cdf(m, top).regularized == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(cdf(m, 10 * top).regularized == 1.0);
    }
}

TEST_CASE("cdf_inverse")
{
    const auto exp_law = model_of({1, 1});
    CHECK(cdf_inverse(exp_law, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-9));

    const auto m = model_of({2, 7, 8, 4});
    for (double p : {0.01, 0.05, 0.5, 0.95})
        CHECK(std::abs(cdf(m, cdf_inverse(m, p)).regularized - p) <= 1e-9);
    CHECK_THROWS_AS(cdf_inverse(m, 0.0), ParameterError);
    CHECK_THROWS_AS(cdf_inverse(m, 1.0), ParameterError);
    CHECK_THROWS_AS(cdf_inverse(m, -0.3), ParameterError);
}

TEST_CASE("JSON cache round trip")
{
    const auto m = model_of({2, 6, 8, 4});
    const auto back = model_from_json(model_to_json(m));
    CHECK(back.alpha() == m.alpha());
    CHECK(back.beta() == m.beta());
    CHECK(back.q() == m.q());
    CHECK(back.config() == m.config());
    for (double x : {10.0, 100.0, 300.0})
        CHECK(back.raw(x) == m.raw(x));
    CHECK_THROWS_AS(model_from_json("{not json"), ParameterError);
    CHECK_THROWS_AS(model_from_json(R"({"alpha": 1})"), ParameterError);
}

TEST_CASE("model against Monte-Carlo ECDF")
{
    const ChannelConfig c({2, 8, 8, 4});
    const Ecdf ecdf(sample_frobenius(c, 1'000'000, 0));
    const auto q6 = model_of(c.dims(), 6);
    const auto q2 = model_of(c.dims(), 2);
    const double d6 = ks_distance(ecdf, [&](double x) { return cdf(q6, x).regularized; });
    const double d2 = ks_distance(ecdf, [&](double x) { return cdf(q2, x).regularized; });
    CHECK(d6 <= 0.02);
    CHECK(d6 <= d2);

    // 5% point: the model quantile sits within 0.02 in probability of the
    // empirical one (the series error dominates the sampling error here).
    const ChannelConfig c2({2, 7, 8, 4});
    const Ecdf e2(sample_frobenius(c2, 1'000'000, 0));
    const double x05 = cdf_inverse(model_of(c2.dims()), 0.05);
    CHECK(std::abs(e2(x05) - 0.05) <= 0.02);
}
