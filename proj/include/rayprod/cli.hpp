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


#ifndef RAYPROD_CLI_HPP
#define RAYPROD_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rayprod/channel_config.hpp"
#include "rayprod/montecarlo.hpp"

namespace rayprod::cli
{

enum class OutputFormat
{
    csv,
    json
};

/// Everything a subcommand needs, validated before dispatch.
struct RunConfig
{
    std::optional<ChannelConfig> dims;
    int q = 6;
    std::optional<double> snr_db;
    std::vector<double> snr_grid_db;
    std::optional<std::pair<int, int>> rate; // explicit (S, T); empty means catalog
    std::vector<double> z_grid;
    std::optional<double> pout;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::csv;
    std::string out;        // empty: standard output
    bool bits = false;      // report capacities in bits/s/Hz
    bool simulate = false;  // overlay Monte-Carlo ECDF on cdf curves
    int points = 256;       // cdf grid size
    SamplerKind sampler = SamplerKind::direct;
    unsigned workers = 0;
    std::string save_model; // JSON model cache to write
    std::string load_model; // JSON model cache to read instead of fitting
    std::string figure;     // reproduce: fig2 | fig3 | fig4
};

/// "start:stop:step" (inclusive stop) or a comma-separated list.
std::vector<double> parse_grid(const std::string &text);

/// "S/T" with positive integers S <= T.
std::pair<int, int> parse_rate(const std::string &text);

/// Default seed: RAYPROD_SEED when set, 0 otherwise.
std::uint64_t default_seed();

struct Curve
{
    std::string id;
    std::vector<double> x;
    std::vector<double> y;
};

/// Long-format curve data; the axis labels carry units.
struct CurveBundle
{
    std::string x_label;
    std::string y_label;
    std::vector<Curve> curves;
};

void write_csv(const CurveBundle &bundle, std::ostream &os);
void write_json(const CurveBundle &bundle, std::ostream &os);

/// Table of moments per route: m, exact_partition, closed_form, mgf_series,
/// leading_order. Unavailable routes are left empty (CSV) or null (JSON),
/// with the reason on `diagnostics`.
void cmd_moments(const RunConfig &config, std::ostream &os, std::ostream &diagnostics);

/// Model CDF (raw and regularized) on a grid over [0, mean + 6 sd], with an
/// optional ECDF overlay.
void cmd_cdf(const RunConfig &config, std::ostream &os, std::ostream &diagnostics);

/// Outage probability over a rate grid (no --pout), or outage capacity over an
/// SNR grid (--pout).
void cmd_outage(const RunConfig &config, std::ostream &os, std::ostream &diagnostics);

/// Monte-Carlo draws of X: writes the binary sample file to --out (when
/// given) and summary statistics to `os`.
void cmd_simulate(const RunConfig &config, std::ostream &os, std::ostream &diagnostics);

/// Curve bundles for the outage figures: fig2, fig3, fig4.
CurveBundle reproduce_bundle(const RunConfig &config);
void cmd_reproduce(const RunConfig &config, std::ostream &os, std::ostream &diagnostics);

/// Full front end; returns the process exit status.
int run(int argc, char **argv);

} // namespace rayprod::cli

#endif
