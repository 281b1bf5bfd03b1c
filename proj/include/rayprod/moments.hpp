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


#ifndef RAYPROD_MOMENTS_HPP
#define RAYPROD_MOMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rayprod/channel_config.hpp"

namespace rayprod
{

enum class MomentMethod
{
    exact_partition,
    closed_form,
    mgf_series,
    leading_order
};

std::string to_string(MomentMethod method);
MomentMethod moment_method_from_string(const std::string &name);

/// E[X^1] ... E[X^q] of X = ||P_n||_F^2, with the route used for each entry.
struct MomentSet
{
    ChannelConfig config;
    int q = 0;
    std::vector<double> values;
    std::vector<MomentMethod> methods;

    /// E[X^m] for m = 0..q (m = 0 gives 1).
    double moment(int m) const { return m == 0 ? 1.0 : values.at(static_cast<std::size_t>(m - 1)); }
};

enum class MomentPolicy
{
    exact_with_fallback, // partition sum where the guards allow, leading order otherwise
    exact_only,          // guard violations propagate
    leading_order_only
};

/// Limits of the partition-sum route.
inline constexpr int kExactMomentMaxOrder = 12;
inline constexpr std::uint64_t kExactMomentMaxCompositions = 10'000'000;

/// Limits of the truncated power series determinant route.
inline constexpr int kMgfMaxOrder = 12;
inline constexpr int kMgfMaxSize = 16;

/// Number of weak compositions of m into k parts, C(m+k-1, k-1); saturates at
/// UINT64_MAX.
std::uint64_t composition_count(int m, int k);

struct PartitionSumStats
{
    double value = 0;
    std::uint64_t compositions = 0; // compositions visited
    std::uint64_t nonzero_terms = 0;
};

/// E[X^m] from the sum over weak compositions (a_1..a_K0) of m, where K0 is
/// the smallest dimension after canonical rotation. Each term carries the sign
/// of prod_{i<j} (a_j - a_i + j - i) and a log-domain magnitude built from
/// Gamma(j + a_j + nu_i); the signed terms are summed with magnitude-sorted
/// compensated summation.
///
/// Throws ResourceError when m > 12 or the composition count exceeds 1e7.
double exact_moment(const ChannelConfig &config, int m);
PartitionSumStats exact_moment_stats(const ChannelConfig &config, int m);

/// E[X], E[X^2], E[X^3] as explicit products over the dimensions.
double closed_form_moment(const ChannelConfig &config, int m);

/// E[X^m] as m! times the s^m coefficient of the moment-generating function,
/// a K0 x K0 determinant of power series in s. The determinant is evaluated by
/// pivoted elimination over series truncated at degree m, in quad precision
/// because the constant-term matrix is a Hankel matrix of Gamma values.
double mgf_moment(const ChannelConfig &config, int m);

/// All of E[X^0] .. E[X^m] from a single series determinant.
std::vector<double> mgf_moments(const ChannelConfig &config, int m);

/// Dominant term for many scattering layers: prod_{i=0}^{n} (K_i)_m / m!.
double leading_order_moment(const ChannelConfig &config, int m);

MomentSet moment_set(const ChannelConfig &config, int q,
                     MomentPolicy policy = MomentPolicy::exact_with_fallback);

} // namespace rayprod

#endif
