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


#ifndef RAYPROD_OUTAGE_HPP
#define RAYPROD_OUTAGE_HPP

#include <cmath>

#include "rayprod/cdf_model.hpp"
#include "rayprod/channel_config.hpp"

namespace rayprod
{

/// Orthogonal space-time block code parameters: S symbols over T slots on
/// K0 transmit antennas, rate R = S/T.
struct OstbcScheme
{
    int symbols = 1;
    int block_length = 1;
    int tx_antennas = 1;

    double rate() const { return static_cast<double>(symbols) / block_length; }

    /// Validates S, T, K0 positive and S <= T.
    static OstbcScheme make(int symbols, int block_length, int tx_antennas);
};

/// Complex-constellation catalog: K0 = 1 or 2 gives rate 1 (SISO and the
/// Alamouti code), K0 = 3 or 4 rate 3/4, K0 >= 5 rate 1/2.
OstbcScheme ostbc_catalog(int tx_antennas);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Post-decoding SNR gamma * x / (R K0 N).
double effective_snr(const OstbcScheme &scheme, const ChannelConfig &config, double gamma, double x);

/// P(C < z) = F_X(R K0 N (e^{z/R} - 1) / gamma), rate z in nats/s/Hz.
double outage_probability(const GammaLaguerreModel &model, const OstbcScheme &scheme,
                          const ChannelConfig &config, double gamma, double z);

/// R ln(1 + gamma F_X^{-1}(p) / (R K0 N)), in nats/s/Hz.
double outage_capacity(const GammaLaguerreModel &model, const OstbcScheme &scheme,
                       const ChannelConfig &config, double gamma, double p);

} // namespace rayprod

#endif
