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

#include <cstddef>
#include <vector>

#include "mimo_ee/types.hpp"

namespace mimo_ee
{

inline constexpr double kSpeedOfLight = 2.998e8;       // m/s
inline constexpr double kVacuumPermittivity = 8.854e-12; // F/m

struct PhysicalConstants
{
    double frequency;         // Hz
    double wavelength;        // m
    double wavenumber;        // rad/m
    double angular_frequency; // rad/s
    double permittivity;      // F/m

    /// Self-admittance of an isolated z-directed magnetic dipole over a ground
    /// plane, k*w*eps/(3*pi). Also the matched generator admittance for arrays.
    double radiation_conductance() const;

    /// Receiver-side scaling sqrt(3*pi/(k*w*eps)) applied to every user.
    double receive_scaling() const;
};

PhysicalConstants build_constants(double frequency_hz);

/// Element positions in the xz-plane plus the element -> transmitter wiring.
/// Transmitter t owns a contiguous run of elements laid along x at z = t*spacing_z.
struct ArrayLayout
{
    std::vector<Vec3> positions;
    std::size_t n_transmitters = 0;
    std::vector<std::size_t> feed_map; // element index -> transmitter index
    double spacing_x = 0.0;
    double spacing_z = 0.0;

    std::size_t size() const { return positions.size(); }
    std::size_t per_transmitter() const { return n_transmitters ? positions.size() / n_transmitters : 0; }
    double x_extent() const;
};

ArrayLayout build_layout(std::size_t n_transmitters, std::size_t n_per_tx, double spacing_x, double spacing_z);

/// Element spacing that keeps the row extent (first to last element) equal
/// to `aperture` when `n_per_tx` elements are placed on it.
double spacing_for_aperture(double aperture, std::size_t n_per_tx);

struct WaveguideSpec
{
    double width;                    // a, along z (m)
    double height;                   // b, along y (m)
    double feed_offset;              // L_w, feed to first element along x (m)
    double guided_wavenumber;        // k_x (rad/m)
    double characteristic_admittance; // Y0 (S)
};

/// TE10 waveguide. `feed_phase` is k_x * L_w; the feed offset is derived from it.
WaveguideSpec build_waveguide(const PhysicalConstants& consts, double width, double height, double feed_phase,
                              double characteristic_admittance);

} // namespace mimo_ee
