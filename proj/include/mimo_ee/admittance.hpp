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

#include <memory>
#include <string_view>
#include <vector>

#include "mimo_ee/geometry.hpp"

namespace mimo_ee
{

/// zz-component of the free-space dyadic Green's function for a displacement
/// `d` (exp(-ikR) convention). Magnetic dipoles are z-oriented.
cd green_zz(const Vec3& d, double k);

/// Coupling matrix of radiating magnetic dipoles over a ground plane:
/// diagonal k*w*eps/(3*pi), off-diagonal i*2*w*eps*G_zz(r_n - r_m).
/// Throws InvalidGeometry for coincident positions.
CMatrix mutual_admittance(const std::vector<Vec3>& positions, const PhysicalConstants& consts);

inline CMatrix mutual_admittance_array(const ArrayLayout& layout, const PhysicalConstants& consts)
{
    return mutual_admittance(layout.positions, consts);
}

// ---- DMA waveguides -----------------------------------------------------

/// Guided-wave contribution of the waveguides: transmitter self-admittance,
/// transmitter-to-element coupling and the element-to-element part carried by
/// the guide (radiative coupling is added separately).
struct LineCoupling
{
    CMatrix y_tt; // N_t x N_t
    CMatrix y_st; // N x N_t, element n only couples to its own waveguide
    CMatrix y_ss; // N x N, block diagonal by waveguide
};

/// Strategy that turns a layout into guided-wave admittances. Each waveguide
/// is modelled as a TE10 transmission line, the feed sits `feed_offset` before
/// the first element and every element taps the line with weight `tap_coupling`.
class WaveguideCouplingModel
{
  public:
    virtual ~WaveguideCouplingModel() = default;
    virtual std::string_view name() const = 0;
    LineCoupling build(const ArrayLayout& layout, const WaveguideSpec& wg, double tap_coupling) const;

    /// Line admittance kernel between two points of one waveguide whose feed
    /// is at x_feed and whose last element is at x_last.
    virtual cd kernel(double xa, double xb, double x_feed, double x_last, const WaveguideSpec& wg) const = 0;

  protected:
    virtual void check_row(double x_feed, double x_last, const WaveguideSpec& wg) const;
};

/// Lossless guide closed by a short a quarter guided wavelength past the last
/// element. Purely reactive; all real power leaves through the elements.
class ShortedLineModel final : public WaveguideCouplingModel
{
  public:
    std::string_view name() const override { return "shorted-line"; }
    cd kernel(double xa, double xb, double x_feed, double x_last, const WaveguideSpec& wg) const override;

  protected:
    void check_row(double x_feed, double x_last, const WaveguideSpec& wg) const override;
};

/// Semi-infinite guide, matched at the far end. Y_tt = Y0.
class MatchedLineModel final : public WaveguideCouplingModel
{
  public:
    std::string_view name() const override { return "matched-line"; }
    cd kernel(double xa, double xb, double x_feed, double x_last, const WaveguideSpec& wg) const override;
};

/// "shorted-line" (alias "default-line") or "matched-line".
std::unique_ptr<WaveguideCouplingModel> make_coupling_model(std::string_view name);

/// Tap weight at which the line self-admittance of an element equals its
/// radiation conductance.
double critical_tap_coupling(const PhysicalConstants& consts, const WaveguideSpec& wg);

struct DmaLoadState
{
    RVector y_im;      // tunable susceptances (S), one per element
    double r_s = 0.1;  // element loss conductance (S)
};

/// All admittances of one DMA instance. y_ss includes radiative coupling.
struct DmaAdmittance
{
    CMatrix y_tt;
    CMatrix y_st;
    CMatrix y_ss;
    CVector y_s; // diagonal of Y_s = R_s + i*y_im
    CMatrix y_p; // Y_tt - Y_st^T (Y_s + Y_ss)^{-1} Y_st
    double y_g = 0.0;

    std::size_t elements() const { return static_cast<std::size_t>(y_ss.rows()); }
    std::size_t transmitters() const { return static_cast<std::size_t>(y_tt.rows()); }
};

/// Minimum reciprocal condition accepted by every factorization in the model.
inline constexpr double kMinRcond = 1e-14;

/// Schur complement Y_tt - Y_st^T (diag(y_s) + Y_ss)^{-1} Y_st.
CMatrix port_admittance(const CMatrix& y_tt, const CMatrix& y_st, const CMatrix& y_ss, const CVector& y_s);

DmaAdmittance dma_admittances(const ArrayLayout& layout, const WaveguideSpec& wg, const PhysicalConstants& consts,
                              const DmaLoadState& load, const WaveguideCouplingModel& model, double tap_coupling,
                              double generator_admittance);

/// Recomputes and caches Y_p for the current y_s.
const CMatrix& effective_port_admittance(DmaAdmittance& set);

} // namespace mimo_ee
