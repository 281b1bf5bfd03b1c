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


#include "rayprod/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rayprod
{

namespace
{

constexpr int kMaxSeriesIterations = 200000;
constexpr double kSeriesTolerance = 1e-16;

// lgamma_r keeps signgam out of the picture; arguments here are positive.
double lgamma_positive(double x)
{
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

long double lgamma_positive(long double x)
{
    int sign = 0;
    return ::lgammal_r(x, &sign);
}

// u - log(1+u), with a series near zero where the subtraction cancels.
double u_minus_log1p(double u)
{
    if (std::abs(u) < 0.1)
    {
        // sum_{k>=2} (-1)^k u^k / k
        double term = u * u;
        double sum = 0;
        for (int k = 2; k < 60; ++k)
        {
            const double contrib = (k % 2 == 0 ? term : -term) / k;
            sum += contrib;
            if (std::abs(contrib) < 1e-18 * std::abs(sum))
                break;
            term *= u;
        }
        return sum;
    }
    return u - std::log1p(u);
}

// lgamma(a+1) - (a ln a - a + 0.5 ln(2 pi a)) for a >= 10.
double stirling_correction(double a)
{
    const double inv = 1.0 / a;
    const double inv2 = inv * inv;
    return inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 * (1.0 / 1680 - inv2 / 1188))));
}

double lower_gamma_series(double a, double x)
{
    // P(a,x) = x^a e^{-x}/Gamma(a+1) * sum_k x^k / ((a+1)...(a+k))
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < kMaxSeriesIterations; ++k)
    {
        term *= x / (a + k);
        sum += term;
        if (term < sum * kSeriesTolerance)
            return sum * std::exp(log_gamma_kernel(a, x));
    }
    throw NumericError("reg_lower_gamma: series failed to converge");
}

double upper_gamma_fraction(double a, double x)
{
    // Q(a,x) = a * x^a e^{-x}/Gamma(a+1) * 1/(x+1-a- 1(1-a)/(x+3-a- ...)), modified Lentz.
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxSeriesIterations; ++i)
    {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kSeriesTolerance)
            return a * std::exp(log_gamma_kernel(a, x)) * h;
    }
    throw NumericError("reg_lower_gamma: continued fraction failed to converge");
}

// Gamma(n) = (n-1)! for a positive integer, as a running product.
long double gamma_integer(int n)
{
    long double v = 1;
    for (int k = 2; k < n; ++k)
        v *= k;
    return v;
}

} // namespace

double log_gamma(double x)
{
    if (!(x > 0))
        throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    return lgamma_positive(x);
}

long double log_gamma(long double x)
{
    if (!(x > 0))
        throw DomainError("log_gamma: argument must be positive");
    return lgamma_positive(x);
}

LogSigned pochhammer_log(double a, unsigned t)
{
    if (!(a > 0))
        throw DomainError("pochhammer_log: base must be positive");
    if (t == 0)
        return LogSigned::one();
    if (t <= 64)
    {
        // direct product, folded into the log whenever it grows large
        double log_sum = 0;
        double product = 1;
        for (unsigned i = 0; i < t; ++i)
        {
            product *= a + i;
            if (product > 1e280)
            {
                log_sum += std::log(product);
                product = 1;
            }
        }
        return LogSigned::from_log(log_sum + std::log(product));
    }
    return LogSigned::from_log(lgamma_positive(a + t) - lgamma_positive(a));
}

double log_gamma_kernel(double a, double x)
{
    if (!(a > 0) || !(x >= 0))
        throw DomainError("log_gamma_kernel: need a > 0 and x >= 0");
    if (x == 0)
        return -std::numeric_limits<double>::infinity();
    if (a < 10)
        return a * std::log(x) - x - lgamma_positive(a + 1);
    const double u = (x - a) / a;
    return -a * u_minus_log1p(u) - 0.5 * std::log(2 * std::numbers::pi * a) - stirling_correction(a);
}

double reg_lower_gamma(double a, double x)
{
    if (!(a > 0))
        throw DomainError("reg_lower_gamma: shape must be positive");
    if (!(x >= 0))
        throw DomainError("reg_lower_gamma: argument must be nonnegative");
    if (x == 0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    double p;
    if (x < a + 1)
        p = lower_gamma_series(a, x);
    else
        p = 1.0 - upper_gamma_fraction(a, x);
    return std::clamp(p, 0.0, 1.0);
}

DeterminantIdentity hankel_gamma_determinant(int k0, int nu1)
{
    if (k0 < 1 || k0 > 12 || nu1 < 0)
        throw ParameterError("hankel_gamma_determinant: need 1 <= K0 <= 12, nu1 >= 0");
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> m(k0, k0);
    for (int i = 1; i <= k0; ++i)
        for (int j = 1; j <= k0; ++j)
            m(i - 1, j - 1) = gamma_integer(i + j + nu1 - 1);
    long double log_rhs = 0;
    for (int j = 1; j <= k0; ++j)
        log_rhs += log_gamma(static_cast<long double>(j)) + log_gamma(static_cast<long double>(j + nu1));
    return {static_cast<double>(det_dense(m)), static_cast<double>(std::exp(log_rhs))};
}

DeterminantIdentity bordered_hankel_determinant(int k0, int nu1, int m)
{
    if (k0 < 1 || k0 > 12 || m < 0 || m > 12 || nu1 < 0)
        throw ParameterError("bordered_hankel_determinant: need 1 <= K0 <= 12, 0 <= m <= 12, nu1 >= 0");
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> mat(k0, k0);
    for (int i = 1; i <= k0; ++i)
    {
        for (int j = 1; j < k0; ++j)
            mat(i - 1, j - 1) = gamma_integer(i + j + nu1 - 1);
        mat(i - 1, k0 - 1) = gamma_integer(i + k0 + nu1 + m - 1);
    }
    long double log_rhs = log_gamma(static_cast<long double>(m + nu1 + k0)) +
                          log_gamma(static_cast<long double>(m + k0)) -
                          log_gamma(static_cast<long double>(m + 1));
    for (int i = 1; i < k0; ++i)
        log_rhs += log_gamma(static_cast<long double>(i)) + log_gamma(static_cast<long double>(i + nu1));
    return {static_cast<double>(det_dense(mat)), static_cast<double>(std::exp(log_rhs))};
}

} // namespace rayprod
