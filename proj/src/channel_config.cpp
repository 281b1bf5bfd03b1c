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


#include "rayprod/channel_config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "rayprod/errors.hpp"

namespace rayprod
{

ChannelConfig::ChannelConfig(std::vector<int> dims) : dims_(std::move(dims))
{
    if (dims_.size() < 2)
        throw ParameterError("channel config needs at least two dimensions (K0, K1)");
    for (int k : dims_)
        if (k < 1)
            throw ParameterError("channel dimensions must be positive integers");
}

ChannelConfig ChannelConfig::parse(const std::string &text)
{
    std::vector<int> dims;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos)
            comma = text.size();
        const std::string token = text.substr(pos, comma - pos);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
            throw ParameterError("cannot parse dimension '" + token + "' in '" + text + "'");
        dims.push_back(value);
        pos = comma + 1;
    }
    return ChannelConfig(std::move(dims));
}

int ChannelConfig::k_min() const { return *std::min_element(dims_.begin(), dims_.end()); }

std::vector<int> ChannelConfig::canonical_dims() const
{
    std::vector<int> out = dims_;
    std::rotate(out.begin(), std::min_element(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> ChannelConfig::nu() const
{
    std::vector<int> out = canonical_dims();
    const int kmin = out.front();
    for (int &k : out)
        k -= kmin;
    return out;
}

double ChannelConfig::normalization() const
{
    double p = 1;
    for (std::size_t i = 1; i < dims_.size(); ++i)
        p *= dims_[i];
    return p;
}

double ChannelConfig::dims_product() const { return dims_.front() * normalization(); }

ChannelConfig ChannelConfig::prefix(int m) const
{
    if (m < 1 || m > n())
        throw ParameterError("prefix length out of range");
    return ChannelConfig(std::vector<int>(dims_.begin(), dims_.begin() + m + 1));
}

std::string ChannelConfig::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < dims_.size(); ++i)
        os << (i ? "," : "") << dims_[i];
    return os.str();
}

} // namespace rayprod
