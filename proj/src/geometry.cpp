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

#include "mimo_ee/geometry.hpp"

#include <cmath>
#include <string>

namespace mimo_ee
{

std::string_view to_string(Topology t)
{
    switch (t)
    {
    case Topology::FullyDigital:
        return "fd";
    case Topology::Hybrid:
        return "hybrid";
    case Topology::Dma:
        return "dma";
    }
    return "unknown";
}

Topology topology_from_string(std::string_view name)
{
    if (name == "fd")
        return Topology::FullyDigital;
    if (name == "hybrid")
        return Topology::Hybrid;
    if (name == "dma")
        return Topology::Dma;
    throw InvalidArgument("unknown topology '" + std::string(name) + "' (expected fd, hybrid or dma)");
}

SingularMatrix::SingularMatrix(std::string factor, double rcond)
    : Error("singular matrix in " + factor + " (rcond estimate " + std::to_string(rcond) + ")"),
      factor_(std::move(factor)), rcond_(rcond)
{
}

double PhysicalConstants::radiation_conductance() const
{
    return wavenumber * angular_frequency * permittivity / (3.0 * kPi);
}

double PhysicalConstants::receive_scaling() const
{
    return std::sqrt(1.0 / radiation_conductance());
}

PhysicalConstants build_constants(double frequency_hz)
{
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
        throw InvalidArgument("frequency must be positive and finite");

    PhysicalConstants c{};
    c.frequency = frequency_hz;
    c.wavelength = kSpeedOfLight / frequency_hz;
    c.wavenumber = 2.0 * kPi / c.wavelength;
    c.angular_frequency = 2.0 * kPi * frequency_hz;
    c.permittivity = kVacuumPermittivity;
    return c;
}

double ArrayLayout::x_extent() const
{
    if (positions.empty())
        return 0.0;
    double lo = positions.front().x(), hi = lo;
    for (const auto& p : positions)
    {
        lo = std::min(lo, p.x());
        hi = std::max(hi, p.x());
    }
    return hi - lo;
}

ArrayLayout build_layout(std::size_t n_transmitters, std::size_t n_per_tx, double spacing_x, double spacing_z)
{
    if (n_transmitters == 0 || n_per_tx == 0)
        throw InvalidArgument("layout needs at least one transmitter and one element per transmitter");
    if (!(spacing_x > 0.0) || !(spacing_z > 0.0))
        throw InvalidArgument("element spacings must be positive");

    ArrayLayout layout;
    layout.n_transmitters = n_transmitters;
    layout.spacing_x = spacing_x;
    layout.spacing_z = spacing_z;
    layout.positions.reserve(n_transmitters * n_per_tx);
    layout.feed_map.reserve(n_transmitters * n_per_tx);
    for (std::size_t t = 0; t < n_transmitters; ++t)
        for (std::size_t i = 0; i < n_per_tx; ++i)
        {
            layout.positions.emplace_back(static_cast<double>(i) * spacing_x, 0.0, static_cast<double>(t) * spacing_z);
            layout.feed_map.push_back(t);
        }
    return layout;
}

double spacing_for_aperture(double aperture, std::size_t n_per_tx)
{
    if (n_per_tx < 2)
        throw InvalidArgument("a fixed aperture needs at least two elements per row");
    if (!(aperture > 0.0))
        throw InvalidArgument("aperture must be positive");
    return aperture / static_cast<double>(n_per_tx - 1);
}

WaveguideSpec build_waveguide(const PhysicalConstants& consts, double width, double height, double feed_phase,
                              double characteristic_admittance)
{
    const double lambda = consts.wavelength;
    if (!(width > 0.5 * lambda && width < lambda))
        throw InvalidGeometry("waveguide width must lie in (lambda/2, lambda) for single-mode TE10 operation");
    if (!(height > 0.0) || !(feed_phase > 0.0) || !(characteristic_admittance > 0.0))
        throw InvalidArgument("waveguide height, feed phase and admittance must be positive");

    const double k = consts.wavenumber;
    const double cutoff = kPi / width;
    WaveguideSpec wg{};
    wg.width = width;
    wg.height = height;
    wg.guided_wavenumber = std::sqrt(k * k - cutoff * cutoff);
    wg.feed_offset = feed_phase / wg.guided_wavenumber;
    wg.characteristic_admittance = characteristic_admittance;
    return wg;
}

} // namespace mimo_ee
