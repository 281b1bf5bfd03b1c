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


#ifndef RAYPROD_CDF_MODEL_HPP
#define RAYPROD_CDF_MODEL_HPP

#include <string>
#include <vector>

#include "rayprod/moments.hpp"

namespace rayprod
{

inline constexpr int kDefaultMatchedMoments = 6;

struct CdfValue
{
    double raw = 0;
    double regularized = 0; // clamped to [0,1] and nondecreasing
};

/// Gamma base distribution with a Laguerre-polynomial correction series,
/// matched to the first q moments of X.
///
/// F(x) ~ P(alpha, x/beta) + sum_{i=3}^{q} w_i sum_{j=0}^{i} (-1)^j Gamma(alpha+i)/((i-j)! j!) P(alpha+j, x/beta)
///
/// The model is immutable once fitted.
class GammaLaguerreModel
{
  public:
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    int q() const { return source_.q; }
    const MomentSet &source_moments() const { return source_; }
    const ChannelConfig &config() const { return source_.config; }

    /// w_0 .. w_q. Underflows to zero once Gamma(alpha+i) leaves double range.
    const std::vector<double> &weights() const { return weights_; }

    /// Gamma(alpha+i) w_i / i!, the coefficient each correction term is
    /// evaluated with; finite for every alpha.
    const std::vector<long double> &scaled_weights() const { return scaled_; }

    double mean() const { return mean_; }
    double stddev() const { return stddev_; }

    /// Diagnostics about series misbehaviour (negative or >1 excursions,
    /// large corrections). Empty for well-behaved fits.
    const std::vector<std::string> &warnings() const { return warnings_; }

    /// Unregularized series value: P(alpha, x/beta) + eps(x).
    double raw(double x) const;

    /// eps(x) alone.
    double correction(double x) const;

    CdfValue evaluate(double x) const;

    friend GammaLaguerreModel fit(const MomentSet &moments);

  private:
    GammaLaguerreModel() = default;

    MomentSet source_{ChannelConfig({1, 1}), 0, {}, {}};
    double alpha_ = 0;
    double beta_ = 0;
    double mean_ = 0;
    double stddev_ = 0;
    std::vector<double> weights_;
    std::vector<long double> scaled_;
    std::vector<std::string> warnings_;

    // Monotone envelope: running maximum of the clamped raw series on a
    // uniform grid over [0, mean + 20 sd].
    double grid_step_ = 0;
    std::vector<double> envelope_;
};

/// Fits alpha and beta to the first two moments and the correction weights to
/// the rest. Throws FitError if E[X^2] - E[X]^2 <= 0 or q < 2.
GammaLaguerreModel fit(const MomentSet &moments);

inline CdfValue cdf(const GammaLaguerreModel &model, double x) { return model.evaluate(x); }

/// x with regularized cdf(x) = p, by bisection on the monotone envelope.
/// The bracket starts at [0, mean + 10 sd] and doubles at most 60 times.
double cdf_inverse(const GammaLaguerreModel &model, double p);

/// JSON model cache: alpha, beta, weights, q, dims and the source moments.
std::string model_to_json(const GammaLaguerreModel &model);

/// Rebuilds a model from its cached JSON by refitting the stored moments.
GammaLaguerreModel model_from_json(const std::string &text);

} // namespace rayprod

#endif
