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


#ifndef RAYPROD_RNG_HPP
#define RAYPROD_RNG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace rayprod
{

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key)
    {
        constexpr std::uint32_t m0 = 0xD2511F53u;
        constexpr std::uint32_t m1 = 0xCD9E8D57u;
        constexpr std::uint32_t w0 = 0x9E3779B9u;
        constexpr std::uint32_t w1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round)
        {
            const std::uint64_t p0 = static_cast<std::uint64_t>(m0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(m1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
            key[0] += w0;
            key[1] += w1;
        }
        return ctr;
    }
};

/// One reproducible stream of complex normals.
///
/// Stream derivation: key = 64-bit seed; counter = (draw index lo, draw index
/// hi, substream, block). Each draw of a simulation owns its index, and each
/// channel layer inside the draw its substream, so values never depend on
/// evaluation order or worker count.
class ComplexNormalStream
{
  public:
    ComplexNormalStream(std::uint64_t seed, std::uint64_t index, std::uint32_t substream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          counter_{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), substream, 0}
    {
    }

    /// CN(0,1): real and imaginary parts independent N(0, 1/2).
    ///
    /// Marsaglia's polar form of Box-Muller: each Philox block supplies two
    /// candidate points (u, v) on the square (-1,1)^2 from 32-bit words; a
    /// point with 0 < s = u^2 + v^2 < 1 is accepted and scaled by
    /// sqrt(-ln(s)/s). Rejected points are skipped, so the count of blocks
    /// consumed per value varies but the sequence is fixed by the counter.
    std::complex<double> next()
    {
        for (;;)
        {
            if (position_ == 4)
            {
                block_ = Philox4x32::generate(counter_, key_);
                ++counter_[3];
                position_ = 0;
            }
            const double u = (block_[position_] + 0.5) * 0x1.0p-31 - 1.0;
            const double v = (block_[position_ + 1] + 0.5) * 0x1.0p-31 - 1.0;
            position_ += 2;
            const double s = u * u + v * v;
            if (s < 1.0 && s > 0.0)
            {
                const double f = std::sqrt(-std::log(s) / s);
                return {u * f, v * f};
            }
        }
    }

  private:
    Philox4x32::Key key_;
    Philox4x32::Counter counter_;
    Philox4x32::Counter block_{};
    int position_ = 4;
};

} // namespace rayprod

#endif
