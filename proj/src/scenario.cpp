// SPDX-License-Identifier: Apache-2.0
//
// mimo-ee: energy-efficiency simulator for fully-digital, hybrid and DMA transmitters
// Copyright (C) 2026 The mimo-ee authors
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

#include "mimo_ee/scenario.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <toml.hpp>

#include "mimo_ee/geometry.hpp"

namespace mimo_ee
{

SweepAxis sweep_axis_from_string(std::string_view name)
{
    if (name == "none")
        return SweepAxis::None;
    if (name == "antennas")
        return SweepAxis::Antennas;
    if (name == "power")
        return SweepAxis::Power;
    if (name == "spacing")
        return SweepAxis::Spacing;
    throw InvalidArgument("unknown sweep '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::None: return "none";
    case SweepAxis::Antennas: return "antennas";
    case SweepAxis::Power: return "power";
    case SweepAxis::Spacing: return "spacing";
    }
    return "none";
}

double dbm_to_watt(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watt_to_dbm(double watt)
{
    if (!(watt > 0.0))
        throw InvalidArgument("power must be positive to express in dBm");
    return 10.0 * std::log10(watt) + 30.0;
}

void Scenario::validate() const
{
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (topologies.empty())
        fail("no topology selected");
    if (trials == 0)
        fail("trials must be at least 1");
    if (!(geometry.frequency > 0.0))
        fail("geometry.frequency must be positive");
    if (geometry.n_transmitters == 0 || geometry.n_per_tx == 0)
        fail("geometry.N_t and geometry.n_per_tx must be positive");
    if (!(geometry.spacing_x > 0.0) || !(geometry.spacing_z > 0.0))
        fail("geometry spacings must be positive");
    if (array.y_g && !(*array.y_g > 0.0))
        fail("array.Y_g must be positive");
    if (!(dma.y_g > 0.0) || !(dma.a > 0.0) || !(dma.b > 0.0) || !(dma.r_s > 0.0) || !(dma.kx_lw >= 0.0))
        fail("dma parameters must be positive");
    if (dma.tap_coupling && !(*dma.tap_coupling > 0.0))
        fail("dma.tap_coupling must be positive");
    if (channel.users == 0 || !(channel.rho > 0.0) || !(channel.sigma_n2 > 0.0))
        fail("channel.M, channel.rho and channel.sigma_n2 must be positive");
    if (!(max_power > 0.0))
        fail("P_g_max must be positive");
    if (!(sweep.aperture > 0.0))
        fail("sweep.aperture must be positive");
    for (auto n : sweep.antennas)
        if (n == 0)
            fail("sweep.antennas values must be positive");
    for (auto n : sweep.spacing_points)
        if (n < 2)
            fail("sweep.spacing_points values must be at least 2");
    try
    {
        consumption.validate();
        for (const auto& v : variants)
            v.params.validate();
        optimizer.validate();
    }
    catch (const InvalidArgument& e)
    {
        fail(e.what());
    }
}

namespace
{

using Keys = std::initializer_list<std::string_view>;

void reject_unknown(const toml::table& t, std::string_view section, Keys allowed)
{
    for (const auto& [key, node] : t)
    {
        bool ok = false;
        for (auto a : allowed)
            ok = ok || key.str() == a;
        if (!ok)
            throw ConfigError("unknown key '" + std::string(key.str()) + "' in [" + std::string(section) + "]");
    }
}

const toml::table* section(const toml::table& root, std::string_view name)
{
    const auto* node = root.get(name);
    if (!node)
        return nullptr;
    const auto* t = node->as_table();
    if (!t)
        throw ConfigError("'" + std::string(name) + "' must be a table");
    return t;
}

std::string where(std::string_view sec, std::string_view key)
{
    return std::string(sec) + "." + std::string(key);
}

void read(const toml::table& t, std::string_view sec, std::string_view key, double& out)
{
    if (const auto* n = t.get(key))
    {
        if (auto v = n->value<double>())
            out = *v;
        else
            throw ConfigError(where(sec, key) + " must be a number");
    }
}

void read(const toml::table& t, std::string_view sec, std::string_view key, std::optional<double>& out)
{
    if (t.contains(key))
    {
        double v = 0.0;
        read(t, sec, key, v);
        out = v;
    }
}

template <class Int>
void read_int(const toml::table& t, std::string_view sec, std::string_view key, Int& out)
{
    if (const auto* n = t.get(key))
    {
        const auto* i = n->as_integer();
        if (!i || i->get() < 0)
            throw ConfigError(where(sec, key) + " must be a non-negative integer");
        out = static_cast<Int>(i->get());
    }
}

void read(const toml::table& t, std::string_view sec, std::string_view key, std::string& out)
{
    if (const auto* n = t.get(key))
    {
        if (auto v = n->value<std::string>())
            out = *v;
        else
            throw ConfigError(where(sec, key) + " must be a string");
    }
}

template <class T, class Fn>
std::vector<T> read_list(const toml::table& t, std::string_view sec, std::string_view key, Fn convert)
{
    std::vector<T> out;
    const auto* n = t.get(key);
    if (!n)
        return out;
    const auto* arr = n->as_array();
    if (!arr)
        throw ConfigError(where(sec, key) + " must be an array");
    for (const auto& item : *arr)
        out.push_back(convert(item));
    return out;
}

constexpr std::array<std::string_view, 12> kPowerKeys = {"P_bb",  "P_dac", "P_rf",     "P_ps",        "P_var",
                                                         "b_dac", "F_s",   "eta_a",    "P_sat",       "P_sat_fd",
                                                         "P_sat_other", "amplifier_model"};

void read_power(const toml::table& t, std::string_view sec, ConsumptionParams& p)
{
    read(t, sec, "P_bb", p.p_bb);
    read(t, sec, "P_dac", p.p_dac);
    read(t, sec, "P_rf", p.p_rf);
    read(t, sec, "P_ps", p.p_ps);
    read(t, sec, "P_var", p.p_var);
    read_int(t, sec, "b_dac", p.dac_bits);
    read(t, sec, "F_s", p.dac_rate);
    read(t, sec, "eta_a", p.efficiency);
    read(t, sec, "P_sat", p.p_sat);
    read(t, sec, "P_sat_fd", p.p_sat_fd_factor);
    read(t, sec, "P_sat_other", p.p_sat_other_factor);
    std::string model;
    read(t, sec, "amplifier_model", model);
    if (!model.empty())
        p.model = amplifier_model_from_string(model);
}

Scenario build(const toml::table& root)
{
    Scenario s;
    reject_unknown(root, "",
                   {"topologies", "P_g_max_dBm", "run", "geometry", "array", "dma", "channel", "power", "optimizer",
                    "sweep"});

    if (root.contains("topologies"))
        s.topologies = read_list<Topology>(root, "", "topologies", [](const toml::node& n) {
            auto v = n.value<std::string>();
            if (!v)
                throw ConfigError("topologies must be strings");
            return topology_from_string(*v);
        });
    double dbm = 30.0;
    read(root, "", "P_g_max_dBm", dbm);
    s.max_power = dbm_to_watt(dbm);

    if (const auto* t = section(root, "run"))
    {
        reject_unknown(*t, "run", {"trials", "seed", "threads"});
        read_int(*t, "run", "trials", s.trials);
        read_int(*t, "run", "seed", s.seed);
        read_int(*t, "run", "threads", s.threads);
    }
    if (const auto* t = section(root, "geometry"))
    {
        reject_unknown(*t, "geometry", {"frequency", "N_t", "n_per_tx", "spacing_x", "spacing_z"});
        read(*t, "geometry", "frequency", s.geometry.frequency);
        read_int(*t, "geometry", "N_t", s.geometry.n_transmitters);
        read_int(*t, "geometry", "n_per_tx", s.geometry.n_per_tx);
        read(*t, "geometry", "spacing_x", s.geometry.spacing_x);
        read(*t, "geometry", "spacing_z", s.geometry.spacing_z);
    }
    if (const auto* t = section(root, "array"))
    {
        reject_unknown(*t, "array", {"Y_g"});
        read(*t, "array", "Y_g", s.array.y_g);
    }
    if (const auto* t = section(root, "dma"))
    {
        reject_unknown(*t, "dma", {"Y_g", "a", "b", "kx_Lw", "R_s", "tap_coupling", "coupling_model"});
        read(*t, "dma", "Y_g", s.dma.y_g);
        read(*t, "dma", "a", s.dma.a);
        read(*t, "dma", "b", s.dma.b);
        read(*t, "dma", "kx_Lw", s.dma.kx_lw);
        read(*t, "dma", "R_s", s.dma.r_s);
        read(*t, "dma", "tap_coupling", s.dma.tap_coupling);
        read(*t, "dma", "coupling_model", s.dma.coupling_model);
    }
    if (const auto* t = section(root, "channel"))
    {
        reject_unknown(*t, "channel", {"M", "rho", "sigma_n2", "snr_ratio"});
        read_int(*t, "channel", "M", s.channel.users);
        read(*t, "channel", "rho", s.channel.rho);
        read(*t, "channel", "sigma_n2", s.channel.sigma_n2);
        if (t->contains("snr_ratio"))
        {
            if (t->contains("sigma_n2"))
                throw ConfigError("channel.snr_ratio and channel.sigma_n2 are mutually exclusive");
            double ratio = 0.0;
            read(*t, "channel", "snr_ratio", ratio);
            if (!(ratio > 0.0))
                throw ConfigError("channel.snr_ratio must be positive");
            // Ratio of the receive-scaled per-entry channel power to the noise.
            const double alpha = build_constants(s.geometry.frequency).receive_scaling();
            s.channel.sigma_n2 = alpha * alpha * s.channel.rho / ratio;
        }
    }
    if (const auto* t = section(root, "power"))
    {
        Keys keys = {"P_bb", "P_dac", "P_rf", "P_ps", "P_var", "b_dac", "F_s", "eta_a",
                     "P_sat", "P_sat_fd", "P_sat_other", "amplifier_model", "variant"};
        reject_unknown(*t, "power", keys);
        read_power(*t, "power", s.consumption);
        if (const auto* n = t->get("variant"))
        {
            const auto* arr = n->as_array();
            if (!arr)
                throw ConfigError("power.variant must be an array of tables");
            for (const auto& item : *arr)
            {
                const auto* vt = item.as_table();
                if (!vt)
                    throw ConfigError("power.variant entries must be tables");
                ConsumptionVariant v{"", s.consumption};
                for (const auto& [key, node] : *vt)
                {
                    bool ok = key.str() == "name";
                    for (auto a : kPowerKeys)
                        ok = ok || key.str() == a;
                    if (!ok)
                        throw ConfigError("unknown key '" + std::string(key.str()) + "' in [[power.variant]]");
                }
                read(*vt, "power.variant", "name", v.name);
                if (v.name.empty())
                    throw ConfigError("power.variant needs a name");
                read_power(*vt, "power.variant", v.params);
                s.variants.push_back(std::move(v));
            }
        }
    }
    if (const auto* t = section(root, "optimizer"))
    {
        reject_unknown(*t, "optimizer",
                       {"method", "max_iterations", "gradient_tolerance", "sufficient_decrease", "shrink", "restarts",
                        "history", "value_tolerance"});
        std::string method;
        read(*t, "optimizer", "method", method);
        if (!method.empty())
            s.optimizer.method = descent_method_from_string(method);
        read_int(*t, "optimizer", "max_iterations", s.optimizer.max_iterations);
        read(*t, "optimizer", "gradient_tolerance", s.optimizer.gradient_tolerance);
        read(*t, "optimizer", "sufficient_decrease", s.optimizer.sufficient_decrease);
        read(*t, "optimizer", "shrink", s.optimizer.shrink);
        read_int(*t, "optimizer", "restarts", s.optimizer.restarts);
        read_int(*t, "optimizer", "history", s.optimizer.history);
        read(*t, "optimizer", "value_tolerance", s.optimizer.value_tolerance);
    }
    if (const auto* t = section(root, "sweep"))
    {
        reject_unknown(*t, "sweep", {"antennas", "power_dBm", "spacing_points", "aperture"});
        auto to_count = [](const toml::node& n) {
            const auto* i = n.as_integer();
            if (!i || i->get() <= 0)
                throw ConfigError("sweep counts must be positive integers");
            return static_cast<std::size_t>(i->get());
        };
        auto to_double = [](const toml::node& n) {
            auto v = n.value<double>();
            if (!v)
                throw ConfigError("sweep.power_dBm must hold numbers");
            return *v;
        };
        s.sweep.antennas = read_list<std::size_t>(*t, "sweep", "antennas", to_count);
        s.sweep.power_dbm = read_list<double>(*t, "sweep", "power_dBm", to_double);
        s.sweep.spacing_points = read_list<std::size_t>(*t, "sweep", "spacing_points", to_count);
        read(*t, "sweep", "aperture", s.sweep.aperture);
    }
    s.validate();
    return s;
}

} // namespace

Scenario parse_scenario(std::string_view toml_text)
{
    try
    {
        return build(toml::parse(toml_text));
    }
    catch (const toml::parse_error& e)
    {
        std::ostringstream msg;
        msg << "config parse error: " << e.description() << " at line " << e.source().begin.line;
        throw ConfigError(msg.str());
    }
    catch (const InvalidArgument& e)
    {
        throw ConfigError(e.what());
    }
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

} // namespace mimo_ee
