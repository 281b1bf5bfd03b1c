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


#include "rayprod/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <thread>

#include <Eigen/QR>

#include "rayprod/errors.hpp"
#include "rayprod/moments.hpp"
#include "rayprod/rng.hpp"

namespace rayprod
{

namespace
{

void fill_normals(Eigen::MatrixXcd &m, Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                  std::uint64_t index, std::uint32_t layer)
{
    m.resize(rows, cols);
    ComplexNormalStream stream(seed, index, layer);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = stream.next();
}

// Reusable buffers for one worker.
class ProductSampler
{
  public:
    ProductSampler(const ChannelConfig &config, std::uint64_t seed, SamplerKind kind)
        : dims_(config.dims()), seed_(seed), kind_(kind)
    {
    }

    const Eigen::MatrixXcd &draw(std::uint64_t index)
    {
        fill_normals(product_, dims_[1], dims_[0], seed_, index, 1);
        for (std::size_t layer = 2; layer < dims_.size(); ++layer)
        {
            if (kind_ == SamplerKind::direct)
            {
                fill_normals(layer_, dims_[layer], dims_[layer - 1], seed_, index,
                             static_cast<std::uint32_t>(layer));
                next_.noalias() = layer_ * product_;
            }
            else
            {
                const Eigen::Index r = std::min(product_.rows(), product_.cols());
                qr_.compute(product_);
                factor_ = qr_.matrixQR().topRows(r).triangularView<Eigen::Upper>();
                fill_normals(layer_, dims_[layer], r, seed_, index, static_cast<std::uint32_t>(layer));
                next_.noalias() = layer_ * factor_;
            }
            product_.swap(next_);
        }
        return product_;
    }

  private:
    std::vector<int> dims_;
    std::uint64_t seed_;
    SamplerKind kind_;
    Eigen::MatrixXcd product_, next_, layer_, factor_;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr_;
};

unsigned resolve_workers(unsigned requested, std::size_t count)
{
    unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(count, 1)));
}

template <typename Body> void parallel_ranges(std::size_t count, unsigned workers, Body body)
{
    if (workers <= 1)
    {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> threads;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
    {
        const std::size_t begin = std::min(count, w * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        threads.emplace_back([=, &body] { body(begin, end); });
    }
    for (auto &t : threads)
        t.join();
}

} // namespace

Eigen::MatrixXcd sample_product(const ChannelConfig &config, std::uint64_t seed, std::uint64_t index,
                                SamplerKind kind)
{
    ProductSampler sampler(config, seed, kind);
    return sampler.draw(index);
}

SampleSet sample_frobenius(const ChannelConfig &config, std::size_t count, std::uint64_t seed,
                           SamplerOptions options)
{
    if (count < 1)
        throw ParameterError("sample_frobenius: count must be positive");
    SampleSet out{config, seed, std::vector<double>(count)};
    parallel_ranges(count, resolve_workers(options.workers, count), [&](std::size_t begin, std::size_t end) {
        ProductSampler sampler(config, seed, options.kind);
        for (std::size_t i = begin; i < end; ++i)
            out.values[i] = sampler.draw(i).squaredNorm();
    });
    return out;
}

Ecdf::Ecdf(std::vector<double> values) : sorted_(std::move(values))
{
    if (sorted_.empty())
        throw ParameterError("ecdf: empty sample set");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const
{
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::quantile(double p) const
{
    if (!(p > 0 && p <= 1))
        throw ParameterError("ecdf quantile: probability must lie in (0,1]");
    const auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted_.size())));
    return sorted_[std::max<std::size_t>(k, 1) - 1];
}

double ks_distance(const Ecdf &ecdf, const std::function<double(double)> &cdf)
{
    const auto &xs = ecdf.sorted();
    const double n = static_cast<double>(xs.size());
    double d = 0;
    std::size_t i = 0;
    while (i < xs.size())
    {
        std::size_t j = i;
        while (j + 1 < xs.size() && xs[j + 1] == xs[i])
            ++j;
        const double f = cdf(xs[i]);
        d = std::max({d, std::abs(static_cast<double>(j + 1) / n - f), std::abs(f - static_cast<double>(i) / n)});
        i = j + 1;
    }
    return d;
}

double ks_distance(const Ecdf &a, const Ecdf &b)
{
    const auto &xa = a.sorted();
    const auto &xb = b.sorted();
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < xa.size() && j < xb.size())
    {
        const double x = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] <= x)
            ++i;
        while (j < xb.size() && xb[j] <= x)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_pvalue(double d, double n)
{
    const double sqrt_n = std::sqrt(n);
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    if (lambda < 0.2)
        return 1.0;
    double sum = 0;
    for (int k = 1; k <= 100; ++k)
    {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-16)
            break;
    }
    return std::clamp(2 * sum, 0.0, 1.0);
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

SampleMoment sample_moment(const std::vector<double> &values, int m)
{
    if (values.size() < 2)
        throw ParameterError("sample_moment: need at least two samples");
    long double sum = 0, sum_sq = 0;
    for (double v : values)
    {
        const long double p = std::pow(static_cast<long double>(v), m);
        sum += p;
        sum_sq += p * p;
    }
    const long double n = static_cast<long double>(values.size());
    const long double mean = sum / n;
    const long double var = std::max<long double>((sum_sq - n * mean * mean) / (n - 1), 0);
    return {static_cast<double>(mean), static_cast<double>(std::sqrt(var / n))};
}

std::vector<VarianceStep> variance_recursion(const ChannelConfig &config, int upto_n)
{
    if (upto_n < 1 || upto_n > config.n())
        throw ParameterError("variance_recursion: upto_n must lie in [1, n]");
    const auto &dims = config.dims();
    std::vector<VarianceStep> out;
    double plus = 1 + 1.0 / dims[0];  // prod_{i<n} (1 + 1/K_i)
    double minus = 1 - 1.0 / dims[0]; // prod_{i<n} (1 - 1/K_i)
    double variance = 0;              // V[Y_0]: P_0 is the identity
    for (int n = 1; n <= upto_n; ++n)
    {
        const double kn = dims[n];
        VarianceStep step;
        step.n = n;
        step.increment = (plus - minus) / (2 * kn);
        variance += step.increment;
        step.variance = variance;
        const ChannelConfig prefix = config.prefix(n);
        const double scale = prefix.dims_product();
        step.mean = closed_form_moment(prefix, 1) / scale;
        step.variance_from_moments = closed_form_moment(prefix, 2) / (scale * scale) - 1;
        out.push_back(step);
        plus *= 1 + 1 / kn;
        minus *= 1 - 1 / kn;
    }
    return out;
}

ChannelConfig rayleigh_family_config(const RayleighLimitQuery &query)
{
    if (query.scatterers < 1)
        throw ParameterError("rayleigh_limit_distance: K' must be positive");
    std::vector<int> dims{query.tx_antennas};
    for (double rho : query.ratios)
    {
        if (!(rho >= 1))
            throw ParameterError("rayleigh_limit_distance: ratios K_i/K' must be >= 1");
        dims.push_back(static_cast<int>(std::ceil(rho * query.scatterers - 1e-9)));
    }
    dims.push_back(query.rx_antennas);
    return ChannelConfig(std::move(dims));
}

double rayleigh_limit_distance(const RayleighLimitQuery &query)
{
    if (query.count < 1)
        throw ParameterError("rayleigh_limit_distance: count must be positive");
    const ChannelConfig config = rayleigh_family_config(query);
    const auto &dims = config.dims();
    double clusters = 1;
    for (std::size_t i = 1; i + 1 < dims.size(); ++i)
        clusters *= dims[i];
    const double scale = std::sqrt(2.0 / clusters);
    const std::size_t per_draw = 2 * static_cast<std::size_t>(dims.front()) * dims.back();

    std::vector<double> pooled(per_draw * query.count);
    const unsigned workers = resolve_workers(0, query.count);
    parallel_ranges(query.count, workers, [&](std::size_t begin, std::size_t end) {
        ProductSampler sampler(config, query.seed, SamplerKind::gram_reduced);
        for (std::size_t d = begin; d < end; ++d)
        {
            const Eigen::MatrixXcd &p = sampler.draw(d);
            double *out = pooled.data() + d * per_draw;
            for (Eigen::Index k = 0; k < p.size(); ++k)
            {
                *out++ = scale * p(k).real();
                *out++ = scale * p(k).imag();
            }
        }
    });
    return ks_distance(Ecdf(std::move(pooled)), standard_normal_cdf);
}

namespace
{

constexpr char kMagic[8] = {'R', 'A', 'Y', 'P', 'R', 'O', 'D', 'S'};
constexpr std::uint64_t kSampleFileVersion = 1;

template <typename T> void put_le(std::ostream &os, T value)
{
    static_assert(sizeof(T) == 8);
    std::uint64_t bits;
    std::memcpy(&bits, &value, 8);
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
    os.write(reinterpret_cast<const char *>(bytes), 8);
}

template <typename T> T get_le(std::istream &is)
{
    unsigned char bytes[8];
    if (!is.read(reinterpret_cast<char *>(bytes), 8))
        throw IoError("sample file: truncated");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    T value;
    std::memcpy(&value, &bits, 8);
    return value;
}

} // namespace

void write_samples(const std::string &path, const SampleSet &samples)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    os.write(kMagic, sizeof kMagic);
    put_le<std::uint64_t>(os, kSampleFileVersion);
    put_le<std::uint64_t>(os, samples.values.size());
    put_le<std::uint64_t>(os, samples.seed);
    for (double v : samples.values)
        put_le<double>(os, v);
    if (!os)
        throw IoError("write to '" + path + "' failed");
}

SampleSet read_samples(const std::string &path, const ChannelConfig &config)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open '" + path + "'");
    char magic[8];
    if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw IoError("'" + path + "' is not a sample file");
    if (get_le<std::uint64_t>(is) != kSampleFileVersion)
        throw IoError("'" + path + "': unsupported sample file version");
    const auto count = get_le<std::uint64_t>(is);
    const auto seed = get_le<std::uint64_t>(is);
    SampleSet out{config, seed, {}};
    out.values.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.values.push_back(get_le<double>(is));
    return out;
}

} // namespace rayprod
