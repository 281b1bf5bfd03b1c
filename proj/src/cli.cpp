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


#include "rayprod/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rayprod/cdf_model.hpp"
#include "rayprod/errors.hpp"
#include "rayprod/moments.hpp"
#include "rayprod/outage.hpp"

namespace rayprod::cli
{

namespace
{

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Finite numbers only; JSON has no NaN.
nlohmann::json json_number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return nlohmann::json::parse(fmt(v));
}

const ChannelConfig &require_dims(const RunConfig &config)
{
    if (!config.dims)
        throw ParameterError("--dims is required");
    return *config.dims;
}

std::vector<double> default_grid(double start, double stop, double step)
{
    std::vector<double> out;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long k = 0; k <= n; ++k)
        out.push_back(start + k * step);
    return out;
}

OstbcScheme scheme_for(const RunConfig &config, const ChannelConfig &dims)
{
    if (config.rate)
        return OstbcScheme::make(config.rate->first, config.rate->second, dims.transmit());
    return ostbc_catalog(dims.transmit());
}

GammaLaguerreModel model_for(const RunConfig &config, const ChannelConfig &dims)
{
    if (!config.load_model.empty())
    {
        std::ifstream is(config.load_model);
        if (!is)
            throw IoError("cannot open model cache '" + config.load_model + "'");
        std::stringstream ss;
        ss << is.rdbuf();
        GammaLaguerreModel model = model_from_json(ss.str());
        if (model.config() != dims)
            throw ParameterError("model cache was fitted for dims " + model.config().to_string());
        return model;
    }
    GammaLaguerreModel model = fit(moment_set(dims, config.q));
    if (!config.save_model.empty())
    {
        std::ofstream os(config.save_model);
        if (!os)
            throw IoError("cannot write model cache '" + config.save_model + "'");
        os << model_to_json(model) << '\n';
    }
    return model;
}

void report_warnings(const GammaLaguerreModel &model, std::ostream &diagnostics)
{
    for (const auto &w : model.warnings())
        diagnostics << "warning: dims " << model.config().to_string() << ": " << w << '\n';
}

double capacity_unit(const RunConfig &config) { return config.bits ? 1.0 / std::numbers::ln2 : 1.0; }

std::string capacity_label(const RunConfig &config)
{
    return config.bits ? "bits_per_s_per_hz" : "nats_per_s_per_hz";
}

void write_bundle(const RunConfig &config, const CurveBundle &bundle, std::ostream &os)
{
    if (config.format == OutputFormat::json)
        write_json(bundle, os);
    else
        write_csv(bundle, os);
}

SampleSet simulate(const RunConfig &config, const ChannelConfig &dims)
{
    return sample_frobenius(dims, config.samples, config.seed, {config.sampler, config.workers});
}

// P_out(z) model curve at linear SNR gamma.
Curve outage_curve(std::string id, const GammaLaguerreModel &model, const OstbcScheme &scheme,
                   const ChannelConfig &dims, double gamma, const std::vector<double> &z_grid, double unit)
{
    Curve c{std::move(id), {}, {}};
    for (double z : z_grid)
    {
        c.x.push_back(z * unit);
        c.y.push_back(outage_probability(model, scheme, dims, gamma, z));
    }
    return c;
}

Curve outage_curve_mc(std::string id, const Ecdf &ecdf, const OstbcScheme &scheme, const ChannelConfig &dims,
                      double gamma, const std::vector<double> &z_grid, double unit)
{
    Curve c{std::move(id), {}, {}};
    const double scale = scheme.rate() * dims.transmit() * dims.normalization() / gamma;
    for (double z : z_grid)
    {
        c.x.push_back(z * unit);
        c.y.push_back(ecdf(scale * std::expm1(z / scheme.rate())));
    }
    return c;
}

Curve capacity_curve(std::string id, const GammaLaguerreModel &model, const OstbcScheme &scheme,
                     const ChannelConfig &dims, double p, const std::vector<double> &snr_db, double unit)
{
    Curve c{std::move(id), {}, {}};
    for (double db : snr_db)
    {
        c.x.push_back(db);
        c.y.push_back(outage_capacity(model, scheme, dims, db_to_linear(db), p) * unit);
    }
    return c;
}

Curve capacity_curve_mc(std::string id, const Ecdf &ecdf, const OstbcScheme &scheme, const ChannelConfig &dims,
                        double p, const std::vector<double> &snr_db, double unit)
{
    Curve c{std::move(id), {}, {}};
    const double r = scheme.rate();
    const double x = ecdf.quantile(p);
    for (double db : snr_db)
    {
        c.x.push_back(db);
        c.y.push_back(r * std::log1p(db_to_linear(db) * x / (r * dims.transmit() * dims.normalization())) * unit);
    }
    return c;
}

std::string dims_tag(const ChannelConfig &dims)
{
    std::string s = "dims=" + dims.to_string();
    for (auto &ch : s)
        if (ch == ',')
            ch = '-';
    return s;
}

} // namespace

std::vector<double> parse_grid(const std::string &text)
{
    auto number = [&](const std::string &tok) {
        try
        {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
            return v;
        }
        catch (const std::exception &)
        {
            throw ParameterError("cannot parse number '" + tok + "' in grid '" + text + "'");
        }
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ':'))
            parts.push_back(tok);
        if (parts.size() != 3)
            throw ParameterError("grid '" + text + "' must be start:stop:step");
        const double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
        if (!(step > 0) || stop < start)
            throw ParameterError("grid '" + text + "' needs step > 0 and stop >= start");
        return default_grid(start, stop, step);
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(number(tok));
    if (out.empty())
        throw ParameterError("empty grid");
    return out;
}

std::pair<int, int> parse_rate(const std::string &text)
{
    const auto slash = text.find('/');
    try
    {
        if (slash == std::string::npos)
        {
            if (std::stoi(text) == 1)
                return {1, 1};
            throw ParameterError("rate must be written S/T");
        }
        const int s = std::stoi(text.substr(0, slash));
        const int t = std::stoi(text.substr(slash + 1));
        if (s < 1 || t < 1 || s > t)
            throw ParameterError("rate S/T needs 1 <= S <= T");
        return {s, t};
    }
    catch (const std::logic_error &)
    {
        throw ParameterError("cannot parse rate '" + text + "'");
    }
}

std::uint64_t default_seed()
{
    if (const char *env = std::getenv("RAYPROD_SEED"))
    {
        try
        {
            return std::stoull(env);
        }
        catch (const std::exception &)
        {
            throw ParameterError("RAYPROD_SEED must be an unsigned integer");
        }
    }
    return 0;
}

void write_csv(const CurveBundle &bundle, std::ostream &os)
{
    os << "curve_id," << bundle.x_label << ',' << bundle.y_label << '\n';
    for (const auto &c : bundle.curves)
        for (std::size_t i = 0; i < c.x.size(); ++i)
            os << c.id << ',' << fmt(c.x[i]) << ',' << fmt(c.y[i]) << '\n';
}

void write_json(const CurveBundle &bundle, std::ostream &os)
{
    nlohmann::json j;
    j["x_label"] = bundle.x_label;
    j["y_label"] = bundle.y_label;
    j["curves"] = nlohmann::json::array();
    for (const auto &c : bundle.curves)
    {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["x"] = nlohmann::json::array();
        jc["y"] = nlohmann::json::array();
        for (std::size_t i = 0; i < c.x.size(); ++i)
        {
            jc["x"].push_back(json_number(c.x[i]));
            jc["y"].push_back(json_number(c.y[i]));
        }
        j["curves"].push_back(jc);
    }
    os << j.dump(2) << '\n';
}

void cmd_moments(const RunConfig &config, std::ostream &os, std::ostream &diagnostics)
{
    const ChannelConfig &dims = require_dims(config);
    if (config.q < 1)
        throw ParameterError("--q must be positive");
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<double> mgf;
    try
    {
        mgf = mgf_moments(dims, config.q);
    }
    catch (const ResourceError &e)
    {
        diagnostics << "note: mgf_series unavailable: " << e.what() << '\n';
    }

    struct Row
    {
        int m;
        double exact, closed, series, leading;
    };
    std::vector<Row> rows;
    for (int m = 1; m <= config.q; ++m)
    {
        Row r{m, nan, nan, nan, leading_order_moment(dims, m)};
        try
        {
            r.exact = exact_moment(dims, m);
        }
        catch (const ResourceError &e)
        {
            diagnostics << "note: exact_partition unavailable for m=" << m << ": " << e.what() << '\n';
        }
        if (m <= 3)
            r.closed = closed_form_moment(dims, m);
        if (!mgf.empty())
            r.series = mgf[static_cast<std::size_t>(m)];
        rows.push_back(r);
    }

    if (config.format == OutputFormat::json)
    {
        const MomentSet set = moment_set(dims, config.q);
        nlohmann::json j;
        j["dims"] = dims.dims();
        j["q"] = config.q;
        j["values"] = nlohmann::json::array();
        j["methods"] = nlohmann::json::array();
        for (std::size_t i = 0; i < set.values.size(); ++i)
        {
            j["values"].push_back(json_number(set.values[i]));
            j["methods"].push_back(to_string(set.methods[i]));
        }
        j["routes"] = nlohmann::json::array();
        for (const auto &r : rows)
            j["routes"].push_back({{"m", r.m},
                                   {"exact_partition", json_number(r.exact)},
                                   {"closed_form", json_number(r.closed)},
                                   {"mgf_series", json_number(r.series)},
                                   {"leading_order", json_number(r.leading)}});
        os << j.dump(2) << '\n';
        return;
    }
    auto cell = [](double v) { return std::isfinite(v) ? fmt(v) : std::string(); };
    os << "m,exact_partition,closed_form,mgf_series,leading_order\n";
    for (const auto &r : rows)
        os << r.m << ',' << cell(r.exact) << ',' << cell(r.closed) << ',' << cell(r.series) << ','
           << cell(r.leading) << '\n';
}

void cmd_cdf(const RunConfig &config, std::ostream &os, std::ostream &diagnostics)
{
    const ChannelConfig &dims = require_dims(config);
    if (config.points < 2)
        throw ParameterError("--points must be at least 2");
    const GammaLaguerreModel model = model_for(config, dims);
    report_warnings(model, diagnostics);

    CurveBundle bundle{"x_frobenius_norm_squared", "probability", {}};
    Curve raw{"raw", {}, {}}, reg{"regularized", {}, {}};
    const double top = model.mean() + 6 * model.stddev();
    std::vector<double> grid;
    for (int k = 0; k < config.points; ++k)
        grid.push_back(top * k / (config.points - 1));
    for (double x : grid)
    {
        const CdfValue v = cdf(model, x);
        raw.x.push_back(x);
        raw.y.push_back(v.raw);
        reg.x.push_back(x);
        reg.y.push_back(v.regularized);
    }
    bundle.curves.push_back(std::move(raw));
    bundle.curves.push_back(std::move(reg));
    if (config.simulate)
    {
        const Ecdf ecdf(simulate(config, dims));
        Curve e{"ecdf", grid, {}};
        for (double x : grid)
            e.y.push_back(ecdf(x));
        bundle.curves.push_back(std::move(e));
        diagnostics << "ks_distance=" << fmt(ks_distance(ecdf, [&](double x) { return cdf(model, x).regularized; }))
                    << '\n';
    }
    write_bundle(config, bundle, os);
}

void cmd_outage(const RunConfig &config, std::ostream &os, std::ostream &diagnostics)
{
    const ChannelConfig &dims = require_dims(config);
    const OstbcScheme scheme = scheme_for(config, dims);
    const GammaLaguerreModel model = model_for(config, dims);
    report_warnings(model, diagnostics);
    const double unit = capacity_unit(config);
    std::unique_ptr<Ecdf> ecdf;
    if (config.simulate)
        ecdf = std::make_unique<Ecdf>(simulate(config, dims));

    CurveBundle bundle;
    if (config.pout)
    {
        if (!(*config.pout > 0 && *config.pout < 1))
            throw ParameterError("--pout must lie in (0,1)");
        std::vector<double> snr = config.snr_grid_db;
        if (snr.empty())
            snr = config.snr_db ? std::vector<double>{*config.snr_db} : default_grid(0, 40, 1);
        bundle = {"snr_db", "outage_capacity_" + capacity_label(config), {}};
        bundle.curves.push_back(capacity_curve("model", model, scheme, dims, *config.pout, snr, unit));
        if (ecdf)
            bundle.curves.push_back(capacity_curve_mc("montecarlo", *ecdf, scheme, dims, *config.pout, snr, unit));
    }
    else
    {
        const std::vector<double> z = config.z_grid.empty() ? default_grid(0, 3, 0.01) : config.z_grid;
        for (double v : z)
            if (v < 0)
                throw ParameterError("rates in --z-grid must be nonnegative");
        const double gamma = db_to_linear(config.snr_db.value_or(0.0));
        bundle = {"rate_" + capacity_label(config), "outage_probability", {}};
        bundle.curves.push_back(outage_curve("model", model, scheme, dims, gamma, z, unit));
        if (ecdf)
            bundle.curves.push_back(outage_curve_mc("montecarlo", *ecdf, scheme, dims, gamma, z, unit));
    }
    write_bundle(config, bundle, os);
}

void cmd_simulate(const RunConfig &config, std::ostream &os, std::ostream &diagnostics)
{
    const ChannelConfig &dims = require_dims(config);
    if (config.samples < 2)
        throw ParameterError("--samples must be at least 2");
    const SampleSet samples = simulate(config, dims);
    if (!config.out.empty())
    {
        write_samples(config.out, samples);
        diagnostics << "wrote " << samples.count() << " samples to " << config.out << '\n';
    }
    const Ecdf ecdf(samples.values);

    struct Stat
    {
        std::string name;
        double value, error;
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<Stat> stats{{"count", static_cast<double>(samples.count()), nan},
                            {"seed", static_cast<double>(samples.seed), nan}};
    for (int m = 1; m <= 4; ++m)
    {
        const SampleMoment sm = sample_moment(samples.values, m);
        stats.push_back({"moment_" + std::to_string(m), sm.value, sm.standard_error});
    }
    for (double p : {0.01, 0.05, 0.5, 0.95, 0.99})
        stats.push_back({"quantile_" + fmt(p), ecdf.quantile(p), nan});

    if (config.format == OutputFormat::json)
    {
        nlohmann::json j;
        j["dims"] = dims.dims();
        for (const auto &s : stats)
            j[s.name] = std::isfinite(s.error) ? nlohmann::json{{"value", json_number(s.value)},
                                                                 {"standard_error", json_number(s.error)}}
                                               : json_number(s.value);
        os << j.dump(2) << '\n';
        return;
    }
    os << "statistic,value,standard_error\n";
    for (const auto &s : stats)
        os << s.name << ',' << fmt(s.value) << ',' << (std::isfinite(s.error) ? fmt(s.error) : "") << '\n';
}

CurveBundle reproduce_bundle(const RunConfig &config)
{
    const double unit = capacity_unit(config);
    const bool overlay = config.samples > 0;
    CurveBundle bundle;
    auto add_outage_family = [&](const ChannelConfig &dims, double snr_db, const std::vector<int> &qs,
                                 const std::string &tag, const std::vector<double> &z) {
        const OstbcScheme scheme = scheme_for(config, dims);
        const double gamma = db_to_linear(snr_db);
        const MomentSet moments = moment_set(dims, *std::max_element(qs.begin(), qs.end()));
        for (int q : qs)
        {
            MomentSet sub = moments;
            sub.q = q;
            sub.values.resize(static_cast<std::size_t>(q));
            sub.methods.resize(static_cast<std::size_t>(q));
            bundle.curves.push_back(outage_curve(tag + "_q=" + std::to_string(q) + "_model", fit(sub), scheme, dims,
                                                 gamma, z, unit));
        }
        if (overlay)
            bundle.curves.push_back(
                outage_curve_mc(tag + "_montecarlo", Ecdf(simulate(config, dims)), scheme, dims, gamma, z, unit));
    };

    if (config.figure == "fig2")
    {
        // Only K2/K1 = 4/3 is fixed; the (K1, K2) values are illustrative.
        bundle = {"rate_" + capacity_label(config), "outage_probability", {}};
        const std::vector<double> z = config.z_grid.empty() ? default_grid(0, 2.5, 0.01) : config.z_grid;
        const double snr = config.snr_db.value_or(0.0);
        for (auto [k1, k2] : std::vector<std::pair<int, int>>{{6, 8}, {15, 20}, {30, 40}})
        {
            const ChannelConfig dims({2, k1, k2, 4});
            add_outage_family(dims, snr, {2, 6}, dims_tag(dims), z);
        }
        const ChannelConfig rayleigh({2, 4});
        add_outage_family(rayleigh, snr, {2}, "rayleigh_" + dims_tag(rayleigh), z);
    }
    else if (config.figure == "fig3")
    {
        bundle = {"rate_" + capacity_label(config), "outage_probability", {}};
        const std::vector<double> z = config.z_grid.empty() ? default_grid(0, 3, 0.01) : config.z_grid;
        const std::vector<double> snrs = config.snr_grid_db.empty() ? std::vector<double>{0, 5} : config.snr_grid_db;
        for (double snr : snrs)
        {
            for (int clusters = 0; clusters <= 3; ++clusters)
            {
                std::vector<int> d{4};
                d.insert(d.end(), static_cast<std::size_t>(clusters), 8);
                d.push_back(4);
                const ChannelConfig dims(d);
                add_outage_family(dims, snr, {config.q}, dims_tag(dims) + "_snr=" + fmt(snr) + "dB", z);
            }
        }
    }
    else if (config.figure == "fig4")
    {
        bundle = {"snr_db", "outage_capacity_" + capacity_label(config), {}};
        const std::vector<double> snr = config.snr_grid_db.empty() ? default_grid(0, 40, 1) : config.snr_grid_db;
        const double p = config.pout.value_or(0.05);
        for (int k0 : {2, 4, 8})
        {
            for (const ChannelConfig &dims : {ChannelConfig({k0, 7, 8, 4}), ChannelConfig({k0, 4})})
            {
                const OstbcScheme scheme = ostbc_catalog(k0);
                const int g = std::gcd(scheme.symbols, scheme.block_length);
                std::string rate = std::to_string(scheme.symbols / g);
                if (scheme.block_length != g)
                    rate += "/" + std::to_string(scheme.block_length / g);
                const std::string tag = (dims.n() == 1 ? "rayleigh_" : "") + dims_tag(dims) + "_R=" + rate;
                bundle.curves.push_back(capacity_curve(tag + "_q=" + std::to_string(config.q) + "_model",
                                                       fit(moment_set(dims, config.q)), scheme, dims, p, snr, unit));
                if (overlay && dims.n() > 1)
                    bundle.curves.push_back(capacity_curve_mc(tag + "_montecarlo", Ecdf(simulate(config, dims)),
                                                              scheme, dims, p, snr, unit));
            }
        }
    }
    else
    {
        throw ParameterError("unknown figure '" + config.figure + "' (expected fig2, fig3 or fig4)");
    }
    return bundle;
}

void cmd_reproduce(const RunConfig &config, std::ostream &os, std::ostream &)
{
    write_bundle(config, reproduce_bundle(config), os);
}

namespace
{

constexpr const char *kFooter = R"(Output (long format, one row per point):
  csv   curve_id,<x label with unit>,<y label with unit>
  json  {"x_label", "y_label", "curves": [{"id", "x": [...], "y": [...]}]}
Capacities are in nats/s/Hz unless --bits is given. SNR is in dB.
Exit status: 0 ok, 2 domain, 3 parameter, 4 resource, 5 numeric, 6 fit, 7 io.
RAYPROD_SEED sets the default --seed.)";

} // namespace

int run(int argc, char **argv)
{
    RunConfig config;
    std::string dims_text, snr_grid_text, rate_text, z_grid_text, format_text = "csv", sampler_text = "direct";
    bool auto_rate = false;
    std::optional<std::uint64_t> seed;

    CLI::App app{"rayprod: outage probability and outage capacity of OSTBC over multi-cluster "
                 "scattering MIMO channels"};
    app.footer(kFooter);
    app.require_subcommand(1);

    auto common = [&](CLI::App *sub) {
        sub->add_option("--dims", dims_text, "Channel dimensions K0,K1,...,Kn (transmit to receive)");
        sub->add_option("--q", config.q, "Number of matched moments")->capture_default_str();
        sub->add_option("--snr-db", config.snr_db, "Transmit SNR in dB");
        sub->add_option("--snr-grid", snr_grid_text, "SNR grid in dB, start:stop:step or a,b,c");
        auto *rate = sub->add_option("--rate", rate_text, "Explicit OSTBC rate S/T");
        sub->add_flag("--auto-rate", auto_rate, "Rate from the OSTBC catalog (default)")->excludes(rate);
        sub->add_option("--z-grid", z_grid_text, "Rate grid in nats/s/Hz, start:stop:step or a,b,c");
        sub->add_option("--pout", config.pout, "Target outage probability");
        sub->add_option("--samples", config.samples, "Monte-Carlo draws")->capture_default_str();
        sub->add_option("--seed", seed, "Monte-Carlo seed (default: RAYPROD_SEED or 0)");
        sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", config.out, "Output path (simulate: binary sample file)");
        sub->add_flag("--bits", config.bits, "Report capacities in bits/s/Hz");
        sub->add_option("--sampler", sampler_text, "direct or gram")->check(CLI::IsMember({"direct", "gram"}));
        sub->add_option("--workers", config.workers, "Sampling threads (0: all cores)");
    };

    auto *moments = app.add_subcommand("moments", "Moments of ||P_n||_F^2 by every available route");
    common(moments);
    auto *cdf_cmd = app.add_subcommand("cdf", "Gamma-Laguerre CDF of ||P_n||_F^2");
    common(cdf_cmd);
    cdf_cmd->add_flag("--simulate", config.simulate, "Overlay the Monte-Carlo ECDF");
    cdf_cmd->add_option("--points", config.points, "Grid points")->capture_default_str();
    cdf_cmd->add_option("--save-model", config.save_model, "Write the fitted model as JSON");
    cdf_cmd->add_option("--load-model", config.load_model, "Read a fitted model from JSON");
    auto *outage = app.add_subcommand("outage", "Outage probability over rates, or outage capacity over SNR");
    common(outage);
    outage->add_flag("--simulate", config.simulate, "Overlay Monte-Carlo curves");
    outage->add_option("--save-model", config.save_model, "Write the fitted model as JSON");
    outage->add_option("--load-model", config.load_model, "Read a fitted model from JSON");
    auto *sim = app.add_subcommand("simulate", "Monte-Carlo draws of ||P_n||_F^2 with summary statistics");
    common(sim);
    auto *repro = app.add_subcommand("reproduce", "Curve bundles for fig2, fig3, fig4");
    common(repro);
    repro->add_option("figure", config.figure, "fig2 | fig3 | fig4")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        std::cerr << "rayprod: error: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::parameter);
    }

    try
    {
        if (!dims_text.empty())
            config.dims = ChannelConfig::parse(dims_text);
        if (!snr_grid_text.empty())
            config.snr_grid_db = parse_grid(snr_grid_text);
        if (!z_grid_text.empty())
            config.z_grid = parse_grid(z_grid_text);
        if (!rate_text.empty())
            config.rate = parse_rate(rate_text);
        config.seed = seed ? *seed : default_seed();
        config.format = format_text == "json" ? OutputFormat::json : OutputFormat::csv;
        config.sampler = sampler_text == "gram" ? SamplerKind::gram_reduced : SamplerKind::direct;
        if (config.q < 1)
            throw ParameterError("--q must be positive");

        const bool to_file = !config.out.empty() && !sim->parsed();
        std::ofstream file;
        if (to_file)
        {
            file.open(config.out);
            if (!file)
                throw IoError("cannot open '" + config.out + "' for writing");
        }
        std::ostream &os = to_file ? static_cast<std::ostream &>(file) : std::cout;

        if (moments->parsed())
            cmd_moments(config, os, std::cerr);
        else if (cdf_cmd->parsed())
            cmd_cdf(config, os, std::cerr);
        else if (outage->parsed())
            cmd_outage(config, os, std::cerr);
        else if (sim->parsed())
            cmd_simulate(config, os, std::cerr);
        else if (repro->parsed())
            cmd_reproduce(config, os, std::cerr);
        os.flush();
        return 0;
    }
    catch (const Error &e)
    {
        std::cerr << "rayprod: error: " << e.what() << '\n';
        return static_cast<int>(e.kind());
    }
}

} // namespace rayprod::cli
