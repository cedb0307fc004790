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

#include "mimo_ee/admittance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mimo_ee
{

cd green_zz(const Vec3& d, double k)
{
    const double r = d.norm();
    const double kr = k * r;
    const double cos2 = (d.z() / r) * (d.z() / r);
    const cd transverse = 1.0 - kI / kr - 1.0 / (kr * kr);
    const cd radial = -1.0 + 3.0 * kI / kr + 3.0 / (kr * kr);
    return std::exp(-kI * kr) / (4.0 * kPi * r) * (transverse + cos2 * radial);
}

CMatrix mutual_admittance(const std::vector<Vec3>& positions, const PhysicalConstants& consts)
{
    const auto n = static_cast<Eigen::Index>(positions.size());
    const double k = consts.wavenumber;
    const double self = consts.radiation_conductance();
    const cd scale = 2.0 * kI * consts.angular_frequency * consts.permittivity;
    // Below this separation the closed form loses all significant digits.
    const double min_sep = 1e-9 * consts.wavelength;

    CMatrix y(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        y(i, i) = self;
        for (Eigen::Index j = i + 1; j < n; ++j)
        {
            const Vec3 d = positions[static_cast<std::size_t>(i)] - positions[static_cast<std::size_t>(j)];
            if (d.norm() < min_sep)
                throw InvalidGeometry("elements " + std::to_string(i) + " and " + std::to_string(j) +
                                      " are coincident");
            y(i, j) = scale * green_zz(d, k);
            y(j, i) = y(i, j);
        }
    }
    return y;
}

// ---- waveguide models ---------------------------------------------------

void WaveguideCouplingModel::check_row(double, double, const WaveguideSpec&) const
{
}

LineCoupling WaveguideCouplingModel::build(const ArrayLayout& layout, const WaveguideSpec& wg,
                                           double tap_coupling) const
{
    const auto n = static_cast<Eigen::Index>(layout.size());
    const auto nt = static_cast<Eigen::Index>(layout.n_transmitters);
    if (layout.feed_map.size() != layout.positions.size())
        throw InvalidArgument("layout feed map does not match element count");
    if (!(tap_coupling > 0.0))
        throw InvalidArgument("tap coupling must be positive");

    std::vector<double> first(static_cast<std::size_t>(nt), std::numeric_limits<double>::infinity());
    std::vector<double> last(static_cast<std::size_t>(nt), -std::numeric_limits<double>::infinity());
    for (std::size_t e = 0; e < layout.size(); ++e)
    {
        const auto t = layout.feed_map[e];
        if (t >= layout.n_transmitters)
            throw InvalidArgument("feed map references a missing transmitter");
        first[t] = std::min(first[t], layout.positions[e].x());
        last[t] = std::max(last[t], layout.positions[e].x());
    }

    LineCoupling out{CMatrix::Zero(nt, nt), CMatrix::Zero(n, nt), CMatrix::Zero(n, n)};
    std::vector<double> feed(static_cast<std::size_t>(nt));
    for (Eigen::Index t = 0; t < nt; ++t)
    {
        const auto ut = static_cast<std::size_t>(t);
        if (!std::isfinite(first[ut]))
            throw InvalidGeometry("waveguide " + std::to_string(t) + " has no elements");
        feed[ut] = first[ut] - wg.feed_offset;
        check_row(feed[ut], last[ut], wg);
        out.y_tt(t, t) = kernel(feed[ut], feed[ut], feed[ut], last[ut], wg);
    }

    const double k2 = tap_coupling * tap_coupling;
    for (Eigen::Index a = 0; a < n; ++a)
    {
        const auto t = layout.feed_map[static_cast<std::size_t>(a)];
        const double xa = layout.positions[static_cast<std::size_t>(a)].x();
        out.y_st(a, static_cast<Eigen::Index>(t)) = tap_coupling * kernel(xa, feed[t], feed[t], last[t], wg);
        for (Eigen::Index b = a; b < n; ++b)
        {
            if (layout.feed_map[static_cast<std::size_t>(b)] != t)
                continue;
            const double xb = layout.positions[static_cast<std::size_t>(b)].x();
            out.y_ss(a, b) = k2 * kernel(xa, xb, feed[t], last[t], wg);
            out.y_ss(b, a) = out.y_ss(a, b);
        }
    }
    return out;
}

namespace
{

double short_position(double x_last, const WaveguideSpec& wg)
{
    return x_last + 0.5 * kPi / wg.guided_wavenumber;
}

} // namespace

void ShortedLineModel::check_row(double x_feed, double x_last, const WaveguideSpec& wg) const
{
    const double len = short_position(x_last, wg) - x_feed;
    if (std::abs(std::cos(wg.guided_wavenumber * len)) < 1e-9)
        throw InvalidGeometry("shorted waveguide of length " + std::to_string(len) + " m is at resonance");
}

cd ShortedLineModel::kernel(double xa, double xb, double x_feed, double x_last, const WaveguideSpec& wg) const
{
    // Line open at the feed end (no guide behind the feed), shorted at x_end:
    // Y(x, x') = i Y0 cos(k (x< - x_feed)) sin(k (x_end - x>)) / cos(k L).
    const double kx = wg.guided_wavenumber;
    const double x_end = short_position(x_last, wg);
    const double lo = std::min(xa, xb);
    const double hi = std::max(xa, xb);
    const double num = std::cos(kx * (lo - x_feed)) * std::sin(kx * (x_end - hi));
    return kI * wg.characteristic_admittance * num / std::cos(kx * (x_end - x_feed));
}

cd MatchedLineModel::kernel(double xa, double xb, double x_feed, double, const WaveguideSpec& wg) const
{
    // Direct wave plus its reflection from the open feed end.
    const double kx = wg.guided_wavenumber;
    const cd direct = std::exp(-kI * kx * std::abs(xa - xb));
    const cd image = std::exp(-kI * kx * (xa + xb - 2.0 * x_feed));
    return 0.5 * wg.characteristic_admittance * (direct + image);
}

std::unique_ptr<WaveguideCouplingModel> make_coupling_model(std::string_view name)
{
    if (name == "shorted-line" || name == "default-line")
        return std::make_unique<ShortedLineModel>();
    if (name == "matched-line")
        return std::make_unique<MatchedLineModel>();
    throw InvalidArgument("unknown waveguide coupling model '" + std::string(name) + "'");
}

double critical_tap_coupling(const PhysicalConstants& consts, const WaveguideSpec& wg)
{
    return std::sqrt(consts.radiation_conductance() / wg.characteristic_admittance);
}

// ---- assembled DMA ------------------------------------------------------

CMatrix port_admittance(const CMatrix& y_tt, const CMatrix& y_st, const CMatrix& y_ss, const CVector& y_s)
{
    CMatrix z = y_ss;
    z.diagonal() += y_s;
    Eigen::PartialPivLU<CMatrix> lu(z);
    if (const double rc = lu.rcond(); !(rc >= kMinRcond))
        throw SingularMatrix("Y_s + Y_ss", rc);
    return y_tt - y_st.transpose() * lu.solve(y_st);
}

DmaAdmittance dma_admittances(const ArrayLayout& layout, const WaveguideSpec& wg, const PhysicalConstants& consts,
                              const DmaLoadState& load, const WaveguideCouplingModel& model, double tap_coupling,
                              double generator_admittance)
{
    const auto n = static_cast<Eigen::Index>(layout.size());
    if (load.y_im.size() != n)
        throw InvalidArgument("load state has " + std::to_string(load.y_im.size()) + " susceptances for " +
                              std::to_string(n) + " elements");
    if (!load.y_im.allFinite())
        throw InvalidArgument("load susceptances must be finite");
    if (!(load.r_s > 0.0))
        throw InvalidArgument("element loss R_s must be positive");
    if (!(generator_admittance > 0.0))
        throw InvalidArgument("generator admittance must be positive");
    if (layout.n_transmitters > 1 && layout.spacing_z < wg.width)
        throw InvalidGeometry("waveguides overlap: z spacing is smaller than the guide width");

    LineCoupling line = model.build(layout, wg, tap_coupling);

    DmaAdmittance set;
    set.y_tt = std::move(line.y_tt);
    set.y_st = std::move(line.y_st);
    set.y_ss = std::move(line.y_ss);
    set.y_ss += mutual_admittance(layout.positions, consts);
    set.y_s = (load.r_s + kI * load.y_im.array()).matrix();
    set.y_g = generator_admittance;
    set.y_p = port_admittance(set.y_tt, set.y_st, set.y_ss, set.y_s);
    return set;
}

const CMatrix& effective_port_admittance(DmaAdmittance& set)
{
    set.y_p = port_admittance(set.y_tt, set.y_st, set.y_ss, set.y_s);
    return set.y_p;
}

} // namespace mimo_ee
