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
#include <random>

#include <Eigen/Dense>

#include "rayprod/errors.hpp"
#include "rayprod/special_functions.hpp"

#ifdef RAYPROD_HAVE_BOOST
#include <boost/math/special_functions/gamma.hpp>
#endif

using namespace rayprod;

namespace
{

// Cofactor expansion along the first row, for small integer matrices.
long long cofactor_det(const Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> &m)
{
    const auto n = m.rows();
    if (n == 1)
        return m(0, 0);
    long long det = 0;
    for (Eigen::Index c = 0; c < n; ++c)
    {
        Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> minor(n - 1, n - 1);
        for (Eigen::Index i = 1; i < n; ++i)
            for (Eigen::Index j = 0, k = 0; j < n; ++j)
                if (j != c)
                    minor(i - 1, k++) = m(i, j);
        det += (c % 2 == 0 ? 1 : -1) * m(0, c) * cofactor_det(minor);
    }
    return det;
}

} // namespace

TEST_CASE("log_gamma at integers and half integers")
{
    CHECK(log_gamma(1.0) == doctest::Approx(0.0));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-15));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-15));
    CHECK(static_cast<double>(log_gamma(171.0L)) == doctest::Approx(std::lgamma(171.0)).epsilon(1e-15));
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("pochhammer_log")
{
    CHECK(pochhammer_log(6.0, 3).value() == doctest::Approx(336.0).epsilon(1e-14));
    CHECK(pochhammer_log(1.0, 5).value() == doctest::Approx(120.0).epsilon(1e-14));
    CHECK(pochhammer_log(2.5, 0).value() == 1.0);
    // large t goes through lgamma
    CHECK(pochhammer_log(3.0, 200).log_magnitude ==
          doctest::Approx(std::lgamma(203.0) - std::lgamma(3.0)).epsilon(1e-13));
}

TEST_CASE("reg_lower_gamma closed forms")
{
    for (double x : {0.0, 0.1, 1.0, 3.0, 30.0})
        CHECK(reg_lower_gamma(1.0, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-14));
    // P(2,x) = 1 - (1+x) e^{-x}
    for (double x : {0.5, 2.0, 7.0})
        CHECK(reg_lower_gamma(2.0, x) == doctest::Approx(1 - (1 + x) * std::exp(-x)).epsilon(1e-14));
    // P(1/2, x) = erf(sqrt x)
    for (double x : {0.01, 0.7, 4.0})
        CHECK(reg_lower_gamma(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-14));
    CHECK(reg_lower_gamma(6.0, 0.0) == 0.0);
    CHECK_THROWS_AS(reg_lower_gamma(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(reg_lower_gamma(2.0, -1.0), DomainError);
}

#ifdef RAYPROD_HAVE_BOOST
TEST_CASE("reg_lower_gamma against an independent implementation")
{
    double worst = 0;
    for (double a : {0.3, 1.0, 2.7, 6.0, 16.0, 64.0, 300.0, 4096.0, 1e5})
    {
        const double sd = std::sqrt(a);
        for (int k = -40; k <= 40; ++k)
        {
            const double x = a + k * sd / 5;
            if (x < 0)
                continue;
            worst = std::max(worst, std::abs(reg_lower_gamma(a, x) - boost::math::gamma_p(a, x)));
        }
    }
    CHECK(worst <= 1e-13);
}
#endif

TEST_CASE("SignedLogSum survives cancellation")
{
    SignedLogSum<double> s;
    s.add(LogSigned::from_value(1e20));
    s.add(LogSigned::from_value(1.0));
    s.add(LogSigned::from_value(-1e20));
    CHECK(s.result().value() == doctest::Approx(1.0));

    SignedLogSum<long double> t;
    t.add(BasicLogSigned<long double>::from_log(5000.0L, 1));
    t.add(BasicLogSigned<long double>::from_log(5000.0L + std::log(2.0L), -1));
    const auto r = t.result();
    CHECK(r.sign == -1);
    CHECK(static_cast<double>(r.log_magnitude) == doctest::Approx(5000.0));

    CHECK(SignedLogSum<double>{}.result().is_zero());
}

TEST_CASE("LogSigned arithmetic")
{
    const auto a = LogSigned::from_value(-3.0);
    const auto b = LogSigned::from_value(4.0);
    CHECK((a * b).value() == doctest::Approx(-12.0));
    CHECK((a / b).value() == doctest::Approx(-0.75));
    CHECK((-a).value() == doctest::Approx(3.0));
    CHECK((a * LogSigned::zero()).is_zero());
    CHECK_THROWS_AS(a / LogSigned::zero(), DomainError);
}

TEST_CASE("det_dense against cofactor expansion")
{
    std::mt19937 gen(7);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int n = 1; n <= 5; ++n)
    {
        for (int rep = 0; rep < 40; ++rep)
        {
            Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    m(i, j) = entry(gen);
            const double expected = static_cast<double>(cofactor_det(m));
            const double got = det_dense(m.cast<double>());
            CHECK(got == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
            const long double got_ld = det_dense(m.cast<long double>());
            CHECK(static_cast<double>(got_ld) == doctest::Approx(expected).epsilon(1e-14).scale(1.0));
        }
    }
}

TEST_CASE("det_dense edge cases")
{
    Eigen::Matrix3d singular;
    singular << 1, 2, 3, 2, 4, 6, 1, 0, 1;
    CHECK(det_dense(singular) == 0.0);
    CHECK(det_dense(Eigen::MatrixXd(0, 0)) == 1.0);
    // row scaling keeps tiny but regular matrices away from the singularity cutoff
    const double tiny = det_dense(Eigen::Matrix3d::Identity() * 1e-100);
    CHECK(tiny / 1e-300 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(det_dense(Eigen::MatrixXd(2, 3)), ParameterError);
    CHECK_THROWS_AS(det_dense(Eigen::MatrixXd::Identity(33, 33)), ResourceError);
    // Vandermonde determinant
    Eigen::Matrix4d v;
    const double nodes[] = {1, 2, 4, 7};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            v(i, j) = std::pow(nodes[i], j);
    double expected = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            expected *= nodes[j] - nodes[i];
    CHECK(det_dense(v) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("Hankel determinant identities")
{
    double worst = 0;
    for (int k0 = 1; k0 <= 6; ++k0)
        for (int nu = 0; nu <= 4; ++nu)
        {
            worst = std::max(worst, hankel_gamma_determinant(k0, nu).relative_error());
            for (int m = 0; m <= 6; ++m)
                worst = std::max(worst, bordered_hankel_determinant(k0, nu, m).relative_error());
        }
    CHECK(worst <= 1e-9);
    // K0 = 1: both sides are Gamma(1 + nu)
    CHECK(hankel_gamma_determinant(1, 3).lhs == doctest::Approx(6.0));
}
