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


#include "rayprod/cdf_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "rayprod/errors.hpp"
#include "rayprod/special_functions.hpp"

namespace rayprod
{

namespace
{

constexpr int kEnvelopeCells = 4096;
constexpr double kEnvelopeSpan = 20.0; // standard deviations past the mean

// sum_{k=0}^{i-1} (-1)^k C(i-1,k) y^k / (alpha+1)_k
double laguerre_tail_polynomial(int i, double alpha, double y)
{
    double sum = 0;
    double term = 1; // C(i-1,k) y^k / (alpha+1)_k
    for (int k = 0; k < i; ++k)
    {
        sum += (k % 2 == 0) ? term : -term;
        term *= static_cast<double>(i - 1 - k) / (k + 1) * y / (alpha + 1 + k);
    }
    return sum;
}

} // namespace

GammaLaguerreModel fit(const MomentSet &moments)
{
    if (moments.q < 2 || moments.values.size() < 2)
        throw FitError("fit: need at least two moments");
    const double m1 = moments.moment(1);
    const double m2 = moments.moment(2);
    const double variance = m2 - m1 * m1;
    if (!(m1 > 0) || !(variance > 0))
        throw FitError("fit: degenerate moment set (E[X] = " + std::to_string(m1) +
                       ", variance = " + std::to_string(variance) + ")");

    GammaLaguerreModel model;
    model.source_ = moments;
    model.alpha_ = m1 * m1 / variance;
    model.beta_ = variance / m1;
    model.mean_ = m1;
    model.stddev_ = std::sqrt(variance);

    using Real = long double;
    const Real alpha = model.alpha_;
    const Real log_beta = std::log(static_cast<Real>(model.beta_));
    const int q = moments.q;
    model.scaled_.assign(q + 1, 0);
    model.weights_.assign(q + 1, 0);
    for (int i = 0; i <= q; ++i)
    {
        // Gamma(alpha+i) w_i / i! = sum_l (-1)^l E[X^l] (alpha+l)_{i-l} / ((i-l)! l! beta^l)
        SignedLogSum<Real> sum;
        for (int l = 0; l <= i; ++l)
        {
            const Real log_term = std::log(static_cast<Real>(moments.moment(l))) - l * log_beta +
                                  log_gamma(alpha + i) - log_gamma(alpha + l) -
                                  log_gamma(static_cast<Real>(i - l + 1)) - log_gamma(static_cast<Real>(l + 1));
            sum.add(BasicLogSigned<Real>::from_log(log_term, l % 2 == 0 ? 1 : -1));
        }
        const BasicLogSigned<Real> scaled = sum.result();
        model.scaled_[i] = scaled.value();
        const Real log_w = log_gamma(static_cast<Real>(i + 1)) - log_gamma(alpha + i);
        model.weights_[i] = static_cast<double>((scaled * BasicLogSigned<Real>::from_log(log_w)).value());
    }

    model.grid_step_ = (model.mean_ + kEnvelopeSpan * model.stddev_) / kEnvelopeCells;
    model.envelope_.resize(kEnvelopeCells + 1);
    double running = 0;
    double lowest = 0;
    double highest = 0;
    for (int k = 0; k <= kEnvelopeCells; ++k)
    {
        const double r = model.raw(k * model.grid_step_);
        lowest = std::min(lowest, r);
        highest = std::max(highest, r);
        running = std::max(running, std::clamp(r, 0.0, 1.0));
        model.envelope_[k] = running;
    }
    if (lowest < -1e-3)
        model.warnings_.push_back("series dips below zero (min " + std::to_string(lowest) + ")");
    if (highest > 1 + 1e-3)
        model.warnings_.push_back("series exceeds one (max " + std::to_string(highest) + ")");
    if (model.envelope_.back() < 1 - 1e-6)
        model.warnings_.push_back("series has not reached one at mean + 20 sd");
    return model;
}

double GammaLaguerreModel::correction(double x) const
{
    if (x <= 0)
        return 0;
    const double y = x / beta_;
    // sum_j (-1)^j C(i,j) P(alpha+j, y) telescopes, through
    // P(a+1,y) = P(a,y) - y^a e^{-y}/Gamma(a+1), into
    // y^alpha e^{-y}/Gamma(alpha+1) times a degree i-1 polynomial in y.
    const double kernel = std::exp(log_gamma_kernel(alpha_, y));
    if (kernel == 0)
        return 0;
    long double sum = 0;
    for (int i = 3; i <= q(); ++i)
        sum += scaled_[i] * laguerre_tail_polynomial(i, alpha_, y);
    return static_cast<double>(sum * kernel);
}

double GammaLaguerreModel::raw(double x) const
{
    if (x <= 0)
        return 0;
    return reg_lower_gamma(alpha_, x / beta_) + correction(x);
}

CdfValue GammaLaguerreModel::evaluate(double x) const
{
    CdfValue out;
    if (!(x > 0))
        return out;
    out.raw = raw(x);
    const double cell = x / grid_step_;
    if (cell >= kEnvelopeCells)
    {
        out.regularized = std::max(envelope_.back(), std::clamp(out.raw, 0.0, 1.0));
        return out;
    }
    const auto k = static_cast<std::size_t>(cell);
    out.regularized = std::clamp(out.raw, envelope_[k], envelope_[k + 1]);
    return out;
}

double cdf_inverse(const GammaLaguerreModel &model, double p)
{
    if (!(p > 0 && p < 1))
        throw ParameterError("cdf_inverse: probability must lie in (0,1)");
    double lo = 0;
    double hi = model.mean() + 10 * model.stddev();
    int doublings = 0;
    while (cdf(model, hi).regularized < p)
    {
        lo = hi;
        hi *= 2;
        if (++doublings > 60)
            throw NumericError("cdf_inverse: bracket growth failed");
    }
    for (int iter = 0; iter < 400 && hi - lo > 1e-15 * hi; ++iter)
    {
        const double mid = 0.5 * (lo + hi);
        const double f = cdf(model, mid).regularized;
        if (f < p)
            lo = mid;
        else
            hi = mid;
        if (std::abs(f - p) < 1e-14)
            return mid;
    }
    return 0.5 * (lo + hi);
}

std::string model_to_json(const GammaLaguerreModel &model)
{
    nlohmann::json j;
    j["alpha"] = model.alpha();
    j["beta"] = model.beta();
    j["q"] = model.q();
    j["weights"] = model.weights();
    j["dims"] = model.config().dims();
    j["moments"] = model.source_moments().values;
    std::vector<std::string> methods;
    for (auto m : model.source_moments().methods)
        methods.push_back(to_string(m));
    j["moment_methods"] = methods;
    return j.dump(2);
}

GammaLaguerreModel model_from_json(const std::string &text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
        MomentSet moments{ChannelConfig(j.at("dims").get<std::vector<int>>()), j.at("q").get<int>(),
                          j.at("moments").get<std::vector<double>>(), {}};
        for (const auto &name : j.at("moment_methods"))
            moments.methods.push_back(moment_method_from_string(name.get<std::string>()));
        if (moments.values.size() != static_cast<std::size_t>(moments.q) ||
            moments.methods.size() != moments.values.size())
            throw ParameterError("model cache: moment count does not match q");
        GammaLaguerreModel model = fit(moments);
        const double alpha = j.at("alpha").get<double>();
        const double beta = j.at("beta").get<double>();
        if (std::abs(model.alpha() - alpha) > 1e-9 * alpha || std::abs(model.beta() - beta) > 1e-9 * beta)
            throw ParameterError("model cache: alpha/beta inconsistent with stored moments");
        return model;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ParameterError(std::string("model cache: ") + e.what());
    }
}

} // namespace rayprod
