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


#ifndef RAYPROD_SPECIAL_FUNCTIONS_HPP
#define RAYPROD_SPECIAL_FUNCTIONS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "rayprod/errors.hpp"

namespace rayprod
{

/// A real number stored as sign and natural log of its magnitude.
///
/// Products of Gamma functions overflow doubles long before the quantities
/// built from them do, so intermediate results travel in this form and are
/// materialized only at the end.
template <typename Real> struct BasicLogSigned
{
    Real log_magnitude = Real(0);
    int sign = 0;

    static BasicLogSigned zero() { return {Real(0), 0}; }
    static BasicLogSigned one() { return {Real(0), 1}; }

    static BasicLogSigned from_value(Real v)
    {
        using std::abs;
        using std::log;
        if (v == Real(0))
            return zero();
        return {log(abs(v)), v > Real(0) ? 1 : -1};
    }

    static BasicLogSigned from_log(Real log_magnitude, int sign = 1) { return {log_magnitude, sign}; }

    Real value() const
    {
        using std::exp;
        return sign == 0 ? Real(0) : Real(sign) * exp(log_magnitude);
    }

    bool is_zero() const { return sign == 0; }

    friend BasicLogSigned operator*(const BasicLogSigned &a, const BasicLogSigned &b)
    {
        if (a.sign == 0 || b.sign == 0)
            return zero();
        return {a.log_magnitude + b.log_magnitude, a.sign * b.sign};
    }

    friend BasicLogSigned operator/(const BasicLogSigned &a, const BasicLogSigned &b)
    {
        if (b.sign == 0)
            throw DomainError("LogSigned: division by zero");
        if (a.sign == 0)
            return zero();
        return {a.log_magnitude - b.log_magnitude, a.sign * b.sign};
    }

    BasicLogSigned operator-() const { return {log_magnitude, -sign}; }
};

using LogSigned = BasicLogSigned<double>;

/// Sum of signed log-domain terms.
///
/// Terms are sorted by magnitude and added smallest first with Neumaier
/// compensation, relative to the largest magnitude. The result depends only on
/// the multiset of terms, not on insertion order (ties broken by sign).
template <typename Real> class SignedLogSum
{
  public:
    void add(const BasicLogSigned<Real> &term)
    {
        if (term.sign != 0)
            terms_.push_back(term);
    }

    std::size_t size() const { return terms_.size(); }

    BasicLogSigned<Real> result() const
    {
        using std::abs;
        using std::exp;
        using std::log;
        if (terms_.empty())
            return BasicLogSigned<Real>::zero();
        std::vector<BasicLogSigned<Real>> sorted = terms_;
        std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
            if (a.log_magnitude != b.log_magnitude)
                return a.log_magnitude < b.log_magnitude;
            return a.sign < b.sign;
        });
        const Real top = sorted.back().log_magnitude;
        Real sum = 0;
        Real comp = 0;
        for (const auto &t : sorted)
        {
            const Real v = Real(t.sign) * exp(t.log_magnitude - top);
            const Real s = sum + v;
            if (abs(sum) >= abs(v))
                comp += (sum - s) + v;
            else
                comp += (v - s) + sum;
            sum = s;
        }
        sum += comp;
        if (sum == Real(0))
            return BasicLogSigned<Real>::zero();
        return {top + log(abs(sum)), sum > Real(0) ? 1 : -1};
    }

  private:
    std::vector<BasicLogSigned<Real>> terms_;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);
long double log_gamma(long double x);

/// Rising factorial (a)_t = Gamma(a+t)/Gamma(a) in log form; a > 0.
LogSigned pochhammer_log(double a, unsigned t);

/// ln( x^a e^{-x} / Gamma(a+1) ), accurate for large a where the naive
/// difference of logarithms cancels.
double log_gamma_kernel(double a, double x);

/// Regularized lower incomplete Gamma function P(a, x) = gamma(a, x)/Gamma(a).
double reg_lower_gamma(double a, double x);

/// Determinant by fraction-free (Bareiss) elimination with partial pivoting.
///
/// Integer-valued inputs whose minors stay below 2^53 (2^64 for long double)
/// produce exact results. Rows are scaled by powers of two before elimination.
/// A pivot column whose entries all fall below 1e-12 of the active block's
/// largest entry is treated as structurally zero.
template <typename Derived> typename Derived::Scalar det_dense(const Eigen::MatrixBase<Derived> &input)
{
    using Scalar = typename Derived::Scalar;
    using std::abs;
    using std::frexp;
    using std::ldexp;

    if (input.rows() != input.cols())
        throw ParameterError("det_dense: matrix must be square");
    const Eigen::Index n = input.rows();
    if (n > 32)
        throw ResourceError("det_dense: size exceeds 32");
    if (n == 0)
        return Scalar(1);

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a = input;
    int exponent = 0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const Scalar row_max = a.row(i).cwiseAbs().maxCoeff();
        if (row_max == Scalar(0))
            return Scalar(0);
        int e = 0;
        frexp(row_max, &e);
        a.row(i) *= ldexp(Scalar(1), -e);
        exponent += e;
    }

    int sign = 1;
    Scalar previous = 1;
    for (Eigen::Index k = 0; k < n; ++k)
    {
        Eigen::Index pivot_row = k;
        Scalar best = abs(a(k, k));
        for (Eigen::Index i = k + 1; i < n; ++i)
        {
            if (abs(a(i, k)) > best)
            {
                best = abs(a(i, k));
                pivot_row = i;
            }
        }
        const Scalar block_max = a.bottomRightCorner(n - k, n - k).cwiseAbs().maxCoeff();
        if (best == Scalar(0) || best <= Scalar(1e-12) * block_max)
            return Scalar(0);
        if (pivot_row != k)
        {
            a.row(k).swap(a.row(pivot_row));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
        {
            for (Eigen::Index j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
            a(i, k) = 0;
        }
        previous = a(k, k);
    }
    return Scalar(sign) * ldexp(a(n - 1, n - 1), exponent);
}

struct DeterminantIdentity
{
    double lhs = 0;
    double rhs = 0;
    double relative_error() const { return std::abs(lhs / rhs - 1.0); }
};

/// Hankel Gamma determinant det(Gamma(i+j+nu1-1)), i,j = 1..K0, against the
/// product prod_j Gamma(j) Gamma(j+nu1).
DeterminantIdentity hankel_gamma_determinant(int k0, int nu1);

/// The bordered Hankel determinant whose last column is shifted by m,
/// against Gamma(m+nu1+K0) Gamma(m+K0)/Gamma(m+1) prod_{i<K0} Gamma(i) Gamma(i+nu1).
/// Guarded to K0 <= 12 and m <= 12.
DeterminantIdentity bordered_hankel_determinant(int k0, int nu1, int m);

} // namespace rayprod

#endif
