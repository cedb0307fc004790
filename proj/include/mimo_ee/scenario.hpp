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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimo_ee/optimizer.hpp"
#include "mimo_ee/power.hpp"

namespace mimo_ee
{

/// Lengths are in wavelengths unless the name says otherwise.
struct GeometryConfig
{
    double frequency = 10e9; // Hz
    std::size_t n_transmitters = 8;
    std::size_t n_per_tx = 1;
    double spacing_x = 0.5;
    double spacing_z = 1.0;
};

struct ArrayConfig
{
    std::optional<double> y_g; // S; radiation conductance when unset
};

struct DmaConfig
{
    double y_g = 35.33;              // generator and line admittance Y0 (S)
    double a = 0.73;                 // waveguide width
    double b = 0.17;                 // waveguide height
    double kx_lw = 0.75 * kPi;       // feed phase k_x L_w
    double r_s = 0.1;                // element loss conductance (S)
    std::optional<double> tap_coupling; // critical coupling when unset
    std::string coupling_model = "shorted-line";
};

struct ChannelConfig
{
    std::size_t users = 6;
    double rho = 1.0;       // per-entry channel power
    double sigma_n2 = 0.02; // noise variance
};

/// Consumption override applied to already-solved precoders.
struct ConsumptionVariant
{
    std::string name;
    ConsumptionParams params;
};

enum class SweepAxis
{
    None,
    Antennas, // N/N_t
    Power,    // P_g^max in dBm
    Spacing,  // x spacing in wavelengths at fixed aperture
};

SweepAxis sweep_axis_from_string(std::string_view name);
std::string_view to_string(SweepAxis axis);

struct SweepConfig
{
    std::vector<std::size_t> antennas;   // N/N_t values
    std::vector<double> power_dbm;
    std::vector<std::size_t> spacing_points; // elements per row across the aperture
    double aperture = 2.0;               // row extent for the spacing sweep
};

struct Scenario
{
    std::vector<Topology> topologies{Topology::FullyDigital, Topology::Hybrid, Topology::Dma};
    GeometryConfig geometry;
    ArrayConfig array;
    DmaConfig dma;
    ChannelConfig channel;
    double max_power = 1.0; // P_g^max (W)
    ConsumptionParams consumption;
    std::vector<ConsumptionVariant> variants; // extra consumption models, labelled topology@name
    OptimizerSettings optimizer;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::size_t threads = 0; // 0: hardware concurrency
    SweepConfig sweep;

    /// Throws ConfigError on inconsistent values.
    void validate() const;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Parses a TOML document. Unknown keys are rejected so typos surface.
Scenario parse_scenario(std::string_view toml_text);
Scenario load_scenario(const std::filesystem::path& path);

} // namespace mimo_ee
