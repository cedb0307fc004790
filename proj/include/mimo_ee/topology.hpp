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

#include "mimo_ee/admittance.hpp"
#include "mimo_ee/geometry.hpp"

namespace mimo_ee
{

/// Maps a wireless draw Y_ra (M x N) to the array equivalent channel
///   H_a = -alpha_r * Y_g * Y_ra * (Y_g I + Y_aa)^{-1}.
/// The factorization of (Y_g I + Y_aa) is done once at construction.
class ArrayChannelMap
{
  public:
    ArrayChannelMap(const CMatrix& y_aa, double generator_admittance, const PhysicalConstants& consts);

    CMatrix operator()(const CMatrix& y_ra) const;

    double generator_admittance() const { return y_g_; }
    std::size_t antennas() const { return static_cast<std::size_t>(lu_.rows()); }

  private:
    Eigen::PartialPivLU<CMatrix> lu_;
    double y_g_;
    double scale_;
};

/// DMA circuit with everything fixed except the tunable susceptances.
///   H_d = alpha_r * Y_g * Y_rs (Y_s + Y_ss)^{-1} Y_st (Y_g I + Y_p)^{-1}
class DmaNetwork
{
  public:
    /// Factorizations for one susceptance vector.
    struct State
    {
        RVector y_im;
        Eigen::PartialPivLU<CMatrix> z_lu; // Y_s + Y_ss
        CMatrix z_inv_st;                  // (Y_s + Y_ss)^{-1} Y_st, N x N_t
        CMatrix y_p;                       // N_t x N_t
        Eigen::PartialPivLU<CMatrix> w_lu; // Y_g I + Y_p
    };

    DmaNetwork(CMatrix y_tt, CMatrix y_st, CMatrix y_ss, double r_s, double generator_admittance,
               double receive_scaling);

    static DmaNetwork from_admittances(const DmaAdmittance& set, const PhysicalConstants& consts);

    State factorize(const RVector& y_im) const;
    CMatrix channel(const State& state, const CMatrix& y_rs) const;
    CMatrix channel(const RVector& y_im, const CMatrix& y_rs) const { return channel(factorize(y_im), y_rs); }

    std::size_t elements() const { return static_cast<std::size_t>(y_ss_.rows()); }
    std::size_t transmitters() const { return static_cast<std::size_t>(y_tt_.rows()); }
    double generator_admittance() const { return y_g_; }
    double receive_scaling() const { return alpha_r_; }
    double loss() const { return r_s_; }
    const CMatrix& y_tt() const { return y_tt_; }
    const CMatrix& y_st() const { return y_st_; }
    const CMatrix& y_ss() const { return y_ss_; }

  private:
    CMatrix y_tt_;
    CMatrix y_st_;
    CMatrix y_ss_;
    double r_s_;
    double y_g_;
    double alpha_r_;
};

/// Channel map for a DMA whose loads are frozen in `set`.
class DmaChannelMap
{
  public:
    DmaChannelMap(const DmaAdmittance& set, const PhysicalConstants& consts);
    CMatrix operator()(const CMatrix& y_rs) const { return network_.channel(state_, y_rs); }

  private:
    DmaNetwork network_;
    DmaNetwork::State state_;
};

inline ArrayChannelMap effective_channel_array(const CMatrix& y_aa, double y_g, const PhysicalConstants& consts)
{
    return ArrayChannelMap(y_aa, y_g, consts);
}

inline DmaChannelMap effective_channel_dma(const DmaAdmittance& set, const PhysicalConstants& consts)
{
    return DmaChannelMap(set, consts);
}

/// Partially-connected phase-shifting network Q = exp(i Theta) o S.
struct PhaseNetwork
{
    RMatrix selection; // N x N_t, one 1 per row
    RMatrix theta;     // N x N_t, only entries where selection == 1 matter

    static PhaseNetwork partially_connected(const ArrayLayout& layout);

    /// Throws InvalidArgument unless every row has exactly one connection and
    /// every transmitter drives the same number of antennas.
    void validate() const;

    CMatrix q() const;
    std::size_t antennas() const { return static_cast<std::size_t>(selection.rows()); }
    std::size_t transmitters() const { return static_cast<std::size_t>(selection.cols()); }
    /// N / N_t.
    double fanout() const;

    /// One angle per antenna (the connected entry of each row).
    RVector active_angles() const;
    void set_active_angles(const RVector& angles);
    /// Column of the connected entry of each row.
    std::vector<Eigen::Index> connections() const;
};

/// P_g = (Y_g / 2) * tr(B^H B).
double supplied_power(const CMatrix& b, double y_g);

/// Hybrid P_g with B = Q B_h, using Q^H Q = (N/N_t) I.
double supplied_power_hybrid(const CMatrix& b_h, double y_g, double fanout);

/// Output power of each amplifier, (Y_g/2) * fanout * (B B^H)_nn. fanout is
/// N/N_t for the hybrid array and 1 otherwise. Entries sum to P_g.
RVector per_amplifier_output(const CMatrix& b, double y_g, double fanout = 1.0);

} // namespace mimo_ee
