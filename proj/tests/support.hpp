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


// Small fixtures shared by the test executables.

#pragma once

#include <random>

#include "mimo_ee/admittance.hpp"
#include "mimo_ee/precoding.hpp"
#include "mimo_ee/topology.hpp"

namespace fixture
{

inline const mimo_ee::PhysicalConstants& constants()
{
    static const auto c = mimo_ee::build_constants(10e9);
    return c;
}

/// DMA network of n_t waveguides with n elements each at the baseline
/// waveguide dimensions, loads zeroed.
inline mimo_ee::DmaNetwork small_dma(std::size_t n_t, std::size_t n, double spacing = 0.5, double y_g = 35.33)
{
    using namespace mimo_ee;
    const auto& c = constants();
    const auto layout = build_layout(n_t, n, spacing * c.wavelength, c.wavelength);
    const auto wg = build_waveguide(c, 0.73 * c.wavelength, 0.17 * c.wavelength, 0.75 * kPi, y_g);
    ShortedLineModel model;
    const auto set = dma_admittances(layout, wg, c, {RVector::Zero(static_cast<Eigen::Index>(layout.size())), 0.1},
                                     model, critical_tap_coupling(c, wg), y_g);
    return DmaNetwork::from_admittances(set, c);
}

inline mimo_ee::RVector uniform_vector(Eigen::Index n, double lo, double hi, std::mt19937_64& g)
{
    std::uniform_real_distribution<double> u(lo, hi);
    mimo_ee::RVector v(n);
    for (auto& x : v)
        x = u(g);
    return v;
}

inline mimo_ee::PhaseNetwork random_network(std::size_t n_t, std::size_t per_tx, std::mt19937_64& g)
{
    using namespace mimo_ee;
    auto net = PhaseNetwork::partially_connected(build_layout(n_t, per_tx, 0.5, 1.0));
    net.set_active_angles(uniform_vector(static_cast<Eigen::Index>(n_t * per_tx), 0.0, 2.0 * kPi, g));
    return net;
}

inline double rel_inf_error(const mimo_ee::RVector& got, const mimo_ee::RVector& want)
{
    return (got - want).lpNorm<Eigen::Infinity>() / std::max(want.lpNorm<Eigen::Infinity>(), 1e-300);
}

} // namespace fixture
