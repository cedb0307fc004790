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

#include "mimo_ee/topology.hpp"

#include <cmath>
#include <string>

namespace mimo_ee
{

ArrayChannelMap::ArrayChannelMap(const CMatrix& y_aa, double generator_admittance, const PhysicalConstants& consts)
    : y_g_(generator_admittance), scale_(-consts.receive_scaling() * generator_admittance)
{
    if (!(generator_admittance > 0.0))
        throw InvalidArgument("generator admittance must be positive");
    if (y_aa.rows() != y_aa.cols())
        throw InvalidArgument("Y_aa must be square");
    CMatrix z = y_aa;
    z.diagonal().array() += generator_admittance;
    lu_.compute(z);
    if (const double rc = lu_.rcond(); !(rc >= kMinRcond))
        throw SingularMatrix("Y_g I + Y_aa", rc);
}

CMatrix ArrayChannelMap::operator()(const CMatrix& y_ra) const
{
    if (y_ra.cols() != lu_.rows())
        throw InvalidArgument("channel draw has " + std::to_string(y_ra.cols()) + " columns, array has " +
                              std::to_string(lu_.rows()) + " antennas");
    // X (Y_g I + Y_aa) = Y_ra  <=>  (Y_g I + Y_aa)^T X^T = Y_ra^T
    CMatrix xt = lu_.transpose().solve(y_ra.transpose());
    return scale_ * xt.transpose();
}

// ---- DMA ------------------------------------------------------------------

DmaNetwork::DmaNetwork(CMatrix y_tt, CMatrix y_st, CMatrix y_ss, double r_s, double generator_admittance,
                       double receive_scaling)
    : y_tt_(std::move(y_tt)), y_st_(std::move(y_st)), y_ss_(std::move(y_ss)), r_s_(r_s), y_g_(generator_admittance),
      alpha_r_(receive_scaling)
{
    if (y_tt_.rows() != y_tt_.cols() || y_ss_.rows() != y_ss_.cols() || y_st_.rows() != y_ss_.rows() ||
        y_st_.cols() != y_tt_.rows())
        throw InvalidArgument("inconsistent DMA admittance dimensions");
    if (!(r_s_ > 0.0) || !(y_g_ > 0.0))
        throw InvalidArgument("R_s and Y_g must be positive");
}

DmaNetwork DmaNetwork::from_admittances(const DmaAdmittance& set, const PhysicalConstants& consts)
{
    if (set.y_s.size() == 0)
        throw InvalidArgument("empty DMA admittance set");
    return DmaNetwork(set.y_tt, set.y_st, set.y_ss, set.y_s(0).real(), set.y_g, consts.receive_scaling());
}

DmaNetwork::State DmaNetwork::factorize(const RVector& y_im) const
{
    if (y_im.size() != y_ss_.rows())
        throw InvalidArgument("susceptance vector does not match element count");

    State s;
    s.y_im = y_im;
    CMatrix z = y_ss_;
    z.diagonal().array() += cd(r_s_, 0.0);
    z.diagonal() += kI * y_im.cast<cd>();
    s.z_lu.compute(z);
    if (const double rc = s.z_lu.rcond(); !(rc >= kMinRcond))
        throw SingularMatrix("Y_s + Y_ss", rc);

    s.z_inv_st = s.z_lu.solve(y_st_);
    s.y_p = y_tt_ - y_st_.transpose() * s.z_inv_st;

    CMatrix w = s.y_p;
    w.diagonal().array() += y_g_;
    s.w_lu.compute(w);
    if (const double rc = s.w_lu.rcond(); !(rc >= kMinRcond))
        throw SingularMatrix("Y_g I + Y_p", rc);
    return s;
}

CMatrix DmaNetwork::channel(const State& state, const CMatrix& y_rs) const
{
    if (y_rs.cols() != y_ss_.rows())
        throw InvalidArgument("channel draw does not match DMA element count");
    const CMatrix c = y_rs * state.z_inv_st; // M x N_t
    const CMatrix ht = state.w_lu.transpose().solve(c.transpose());
    return (alpha_r_ * y_g_) * ht.transpose();
}

DmaChannelMap::DmaChannelMap(const DmaAdmittance& set, const PhysicalConstants& consts)
    : network_(DmaNetwork::from_admittances(set, consts)), state_(network_.factorize(set.y_s.imag()))
{
}

// ---- phase network ----------------------------------------------------------

PhaseNetwork PhaseNetwork::partially_connected(const ArrayLayout& layout)
{
    const auto n = static_cast<Eigen::Index>(layout.size());
    const auto nt = static_cast<Eigen::Index>(layout.n_transmitters);
    PhaseNetwork net{RMatrix::Zero(n, nt), RMatrix::Zero(n, nt)};
    for (Eigen::Index i = 0; i < n; ++i)
        net.selection(i, static_cast<Eigen::Index>(layout.feed_map[static_cast<std::size_t>(i)])) = 1.0;
    net.validate();
    return net;
}

void PhaseNetwork::validate() const
{
    if (selection.rows() != theta.rows() || selection.cols() != theta.cols())
        throw InvalidArgument("phase and selection matrices differ in shape");
    if (selection.cols() == 0 || selection.rows() % selection.cols() != 0)
        throw InvalidArgument("antenna count must be a multiple of the transmitter count");
    for (Eigen::Index i = 0; i < selection.rows(); ++i)
    {
        int ones = 0;
        for (Eigen::Index j = 0; j < selection.cols(); ++j)
        {
            const double s = selection(i, j);
            if (s != 0.0 && s != 1.0)
                throw InvalidArgument("selection matrix must be binary");
            ones += (s == 1.0);
        }
        if (ones != 1)
            throw InvalidArgument("each antenna must connect to exactly one transmitter");
    }
    const double per_col = static_cast<double>(selection.rows() / selection.cols());
    for (Eigen::Index j = 0; j < selection.cols(); ++j)
        if (selection.col(j).sum() != per_col)
            throw InvalidArgument("transmitters must drive equally sized subarrays");
}

CMatrix PhaseNetwork::q() const
{
    CMatrix out(selection.rows(), selection.cols());
    for (Eigen::Index j = 0; j < selection.cols(); ++j)
        for (Eigen::Index i = 0; i < selection.rows(); ++i)
            out(i, j) = selection(i, j) == 0.0 ? cd(0.0) : std::polar(1.0, theta(i, j));
    return out;
}

double PhaseNetwork::fanout() const
{
    return static_cast<double>(selection.rows()) / static_cast<double>(selection.cols());
}

std::vector<Eigen::Index> PhaseNetwork::connections() const
{
    std::vector<Eigen::Index> cols(static_cast<std::size_t>(selection.rows()), 0);
    for (Eigen::Index i = 0; i < selection.rows(); ++i)
        selection.row(i).maxCoeff(&cols[static_cast<std::size_t>(i)]);
    return cols;
}

RVector PhaseNetwork::active_angles() const
{
    const auto cols = connections();
    RVector a(selection.rows());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        a(i) = theta(i, cols[static_cast<std::size_t>(i)]);
    return a;
}

void PhaseNetwork::set_active_angles(const RVector& angles)
{
    if (angles.size() != selection.rows())
        throw InvalidArgument("one angle per antenna expected");
    const auto cols = connections();
    for (Eigen::Index i = 0; i < angles.size(); ++i)
        theta(i, cols[static_cast<std::size_t>(i)]) = angles(i);
}

// ---- power accounting ---------------------------------------------------------

double supplied_power(const CMatrix& b, double y_g)
{
    return 0.5 * y_g * b.squaredNorm();
}

double supplied_power_hybrid(const CMatrix& b_h, double y_g, double fanout)
{
    return 0.5 * y_g * fanout * b_h.squaredNorm();
}

RVector per_amplifier_output(const CMatrix& b, double y_g, double fanout)
{
    return (0.5 * y_g * fanout) * b.rowwise().squaredNorm();
}

} // namespace mimo_ee
