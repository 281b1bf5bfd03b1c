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


#include "rayprod/outage.hpp"

#include <cmath>

#include "rayprod/errors.hpp"

namespace rayprod
{

OstbcScheme OstbcScheme::make(int symbols, int block_length, int tx_antennas)
{
    if (symbols < 1 || block_length < 1 || tx_antennas < 1)
        throw ParameterError("OSTBC: symbols, block length and antennas must be positive");
    if (symbols > block_length)
        throw ParameterError("OSTBC: rate S/T must not exceed 1");
    return OstbcScheme{symbols, block_length, tx_antennas};
}

OstbcScheme ostbc_catalog(int tx_antennas)
{
    if (tx_antennas < 1)
        throw ParameterError("ostbc_catalog: need at least one transmit antenna");
    if (tx_antennas <= 2)
        return OstbcScheme::make(tx_antennas, tx_antennas, tx_antennas);
    if (tx_antennas <= 4)
        return OstbcScheme::make(3, 4, tx_antennas);
    return OstbcScheme::make(tx_antennas, 2 * tx_antennas, tx_antennas);
}

namespace
{

void check_scheme(const OstbcScheme &scheme, const ChannelConfig &config)
{
    if (scheme.tx_antennas != config.transmit())
        throw ParameterError("OSTBC antenna count does not match K0 of the channel");
}

double snr_scale(const OstbcScheme &scheme, const ChannelConfig &config)
{
    return scheme.rate() * config.transmit() * config.normalization();
}

} // namespace

double effective_snr(const OstbcScheme &scheme, const ChannelConfig &config, double gamma, double x)
{
    check_scheme(scheme, config);
    if (!(gamma > 0) || !(x >= 0))
        throw ParameterError("effective_snr: need gamma > 0 and x >= 0");
    return gamma * x / snr_scale(scheme, config);
}

double outage_probability(const GammaLaguerreModel &model, const OstbcScheme &scheme,
                          const ChannelConfig &config, double gamma, double z)
{
    check_scheme(scheme, config);
    if (!(gamma > 0) || !(z >= 0))
        throw ParameterError("outage_probability: need gamma > 0 and z >= 0");
    const double r = scheme.rate();
    const double threshold = snr_scale(scheme, config) / gamma * std::expm1(z / r);
    return cdf(model, threshold).regularized;
}

double outage_capacity(const GammaLaguerreModel &model, const OstbcScheme &scheme,
                       const ChannelConfig &config, double gamma, double p)
{
    check_scheme(scheme, config);
    if (!(gamma > 0))
        throw ParameterError("outage_capacity: need gamma > 0");
    const double r = scheme.rate();
    return r * std::log1p(gamma / snr_scale(scheme, config) * cdf_inverse(model, p));
}

} // namespace rayprod
