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


#ifndef RAYPROD_MONTECARLO_HPP
#define RAYPROD_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rayprod/channel_config.hpp"

namespace rayprod
{

enum class SamplerKind
{
    /// Draw every H_i and multiply right to left (H_1 first).
    direct,
    /// Carry only the K0-column triangular factor R of the partial product
    /// M = QR. Since H Q has i.i.d. CN(0,1) entries for any Q with orthonormal
    /// columns, H M has the same law as W R with W i.i.d.; each layer then
    /// costs K_i x min(K_{i-1}, K0) normals instead of K_i x K_{i-1}.
    gram_reduced
};

/// Draws of X = ||P_n||_F^2.
struct SampleSet
{
    ChannelConfig config;
    std::uint64_t seed = 0;
    std::vector<double> values;

    std::size_t count() const { return values.size(); }
};

struct SamplerOptions
{
    SamplerKind kind = SamplerKind::direct;
    unsigned workers = 0; // 0: hardware concurrency
};

/// Draw `index` of the product channel P_n (K_n x K0) for a given seed.
Eigen::MatrixXcd sample_product(const ChannelConfig &config, std::uint64_t seed, std::uint64_t index,
                                SamplerKind kind = SamplerKind::direct);

/// `count` draws of ||P_n||_F^2; draw i uses stream i, so the result is
/// bit-identical for any worker count.
SampleSet sample_frobenius(const ChannelConfig &config, std::size_t count, std::uint64_t seed,
                           SamplerOptions options = {});

/// Right-continuous empirical CDF.
class Ecdf
{
  public:
    explicit Ecdf(std::vector<double> values);
    explicit Ecdf(const SampleSet &samples) : Ecdf(samples.values) {}

    /// (#samples <= x) / count
    double operator()(double x) const;

    const std::vector<double> &sorted() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

    /// Empirical p-quantile: the ceil(p N)-th order statistic.
    double quantile(double p) const;

  private:
    std::vector<double> sorted_;
};

/// sup_x |ECDF(x) - F(x)| for a continuous F, evaluated at the jumps.
double ks_distance(const Ecdf &ecdf, const std::function<double(double)> &cdf);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_distance(const Ecdf &a, const Ecdf &b);

/// Asymptotic Kolmogorov tail probability P(D_n > d) for sample size n
/// (with the Stephens small-sample correction).
double ks_pvalue(double d, double n);

double standard_normal_cdf(double x);

struct SampleMoment
{
    double value = 0;
    double standard_error = 0;
};

/// Sample mean of x^m with its standard error estimated from the sample.
SampleMoment sample_moment(const std::vector<double> &values, int m);

struct VarianceStep
{
    int n = 0;
    double mean = 1;                  // E[Y_n]
    double variance = 0;              // V[Y_n] from the product recursion
    double increment = 0;             // V[Y_n] - V[Y_{n-1}]
    double variance_from_moments = 0; // E[X^2]/(K0 N)^2 - 1
};

/// Mean and variance of Y_n = X/(K0 N) over the prefixes K0..K_n of the
/// configuration, n = 1..upto_n.
std::vector<VarianceStep> variance_recursion(const ChannelConfig &config, int upto_n);

struct RayleighLimitQuery
{
    int tx_antennas = 2;
    int rx_antennas = 4;
    int scatterers = 10;              // K'
    std::vector<double> ratios;       // rho_i = K_i / K'; empty means n = 1
    std::size_t count = 10000;
    std::uint64_t seed = 0;
};

/// Cluster dimensions ceil(rho_i K') between the antenna arrays.
ChannelConfig rayleigh_family_config(const RayleighLimitQuery &query);

/// Kolmogorov-Smirnov distance between the standard normal law and the pooled,
/// sqrt(2)-scaled real and imaginary parts of H = P_n / sqrt(prod_{i=1}^{n-1} K_i).
double rayleigh_limit_distance(const RayleighLimitQuery &query);

/// Flat binary sample file: 32-byte header (8-byte magic "RAYPRODS",
/// uint64 version, uint64 count, uint64 seed), then count little-endian
/// float64 values.
void write_samples(const std::string &path, const SampleSet &samples);
SampleSet read_samples(const std::string &path, const ChannelConfig &config);

} // namespace rayprod

#endif
