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


#ifndef RAYPROD_CHANNEL_CONFIG_HPP
#define RAYPROD_CHANNEL_CONFIG_HPP

#include <string>
#include <vector>

namespace rayprod
{

/// Dimensions K0, K1, ..., Kn of the channel product P_n = H_n ... H_1, with
/// H_i of size K_i x K_{i-1}. K0 is the transmit side, Kn the receive side.
class ChannelConfig
{
  public:
    explicit ChannelConfig(std::vector<int> dims);

    /// Parses "K0,K1,...,Kn".
    static ChannelConfig parse(const std::string &text);

    const std::vector<int> &dims() const { return dims_; }
    int n() const { return static_cast<int>(dims_.size()) - 1; }
    int transmit() const { return dims_.front(); }
    int receive() const { return dims_.back(); }
    int k_min() const;

    /// Dimensions rotated cyclically so that the first minimal entry leads.
    /// The nonzero eigenvalue law of P_n P_n^H depends on the multiset of
    /// dimensions only, so moment formulas run on this order.
    std::vector<int> canonical_dims() const;

    /// nu_i = K_i - K_min over canonical_dims(); nu[0] == 0.
    std::vector<int> nu() const;

    /// prod_{i=1}^{n} K_i: every dimension except the transmit one.
    double normalization() const;

    /// prod_{i=0}^{n} K_i, which is also E[X].
    double dims_product() const;

    /// Leading prefix (K0..K_m) as its own configuration; m >= 1.
    ChannelConfig prefix(int m) const;

    std::string to_string() const;

    friend bool operator==(const ChannelConfig &, const ChannelConfig &) = default;

  private:
    std::vector<int> dims_;
};

} // namespace rayprod

#endif
