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

#include "mimo_ee/power.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mimo_ee
{

AmplifierModel amplifier_model_from_string(std::string_view name)
{
    if (name == "linear")
        return AmplifierModel::Linear;
    if (name == "nonlinear")
        return AmplifierModel::Nonlinear;
    throw InvalidArgument("unknown amplifier model '" + std::string(name) + "'");
}

std::string_view to_string(AmplifierModel m)
{
    return m == AmplifierModel::Linear ? "linear" : "nonlinear";
}

void ConsumptionParams::validate() const
{
    if (p_bb < 0.0 || p_rf < 0.0 || p_ps < 0.0 || p_var < 0.0 || p_sat < 0.0 || dac_rate < 0.0)
        throw InvalidArgument("consumption powers and rates must be non-negative");
    if (dac_bits < 1)
        throw InvalidArgument("DAC needs at least one bit");
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw InvalidArgument("amplifier efficiency must lie in (0, 1]");
    if (p_dac && *p_dac < 0.0)
        throw InvalidArgument("P_dac must be non-negative");
    if (!(p_sat_fd_factor > 0.0) || !(p_sat_other_factor > 0.0))
        throw InvalidArgument("saturation factors must be positive");
}

double ConsumptionParams::dac() const
{
    return p_dac ? *p_dac : dac_power(dac_bits, dac_rate);
}

double dac_power(int bits, double sample_rate)
{
    if (bits < 1 || sample_rate < 0.0)
        throw InvalidArgument("dac_power needs b >= 1 and F_s >= 0");
    return 1.5e-5 * std::ldexp(1.0, bits) + 9e-12 * bits * sample_rate;
}

double amplifier_power(const RVector& p_out, const ConsumptionParams& params, SaturationPolicy policy)
{
    params.validate();
    if ((p_out.array() < 0.0).any())
        throw InvalidArgument("amplifier output powers must be non-negative");
    if (params.model == AmplifierModel::Linear)
        return p_out.sum() / params.efficiency;

    if (!(params.p_sat > 0.0))
        throw InvalidArgument("nonlinear amplifier model needs P_sat > 0");
    if (policy == SaturationPolicy::Throw && p_out.size() > 0 && p_out.maxCoeff() > params.p_sat)
        throw SaturationViolation("amplifier output " + std::to_string(p_out.maxCoeff()) + " W exceeds P_sat " +
                                  std::to_string(params.p_sat) + " W");
    return (p_out.array() * params.p_sat).sqrt().sum() / params.efficiency;
}

double calibrated_saturation(Topology t, double max_power, std::size_t antennas, std::size_t transmitters,
                             const ConsumptionParams& params)
{
    if (!(max_power > 0.0) || antennas == 0 || transmitters == 0)
        throw InvalidArgument("saturation calibration needs positive power and counts");
    if (t == Topology::FullyDigital)
        return params.p_sat_fd_factor * max_power / static_cast<double>(antennas);
    return params.p_sat_other_factor * max_power / static_cast<double>(transmitters);
}

PowerBreakdown total_power(Topology t, std::int64_t n_t, std::int64_t n_ps, std::int64_t n_var, double p_a,
                           const ConsumptionParams& params)
{
    params.validate();
    if (n_t < 0 || n_ps < 0 || n_var < 0)
        throw InvalidArgument("component counts must be non-negative");
    if (p_a < 0.0)
        throw InvalidArgument("amplifier consumption must be non-negative");
    if (t != Topology::Hybrid && n_ps != 0)
        throw InvalidArgument("only the hybrid array has phase shifters");
    if (t != Topology::Dma && n_var != 0)
        throw InvalidArgument("only the DMA has varactors");

    PowerBreakdown out;
    out.p_bb = params.p_bb;
    out.p_dac_total = static_cast<double>(n_t) * 2.0 * params.dac();
    out.p_rf_total = static_cast<double>(n_t) * params.p_rf;
    out.p_a = p_a;
    out.p_ps_total = static_cast<double>(n_ps) * params.p_ps;
    out.p_var_total = static_cast<double>(n_var) * params.p_var;
    out.p_total = out.p_bb + out.p_dac_total + out.p_rf_total + out.p_a + out.p_ps_total + out.p_var_total;
    return out;
}

RVector user_sinr(const CMatrix& h_eq, const CMatrix& b, double noise_variance)
{
    if (h_eq.cols() != b.rows() || h_eq.rows() != b.cols())
        throw InvalidArgument("H_eq B must be square with one stream per user");
    if (!(noise_variance > 0.0))
        throw InvalidArgument("noise variance must be positive");
    const CMatrix g = h_eq * b;
    const RVector row_power = g.rowwise().squaredNorm();
    RVector sinr(g.rows());
    for (Eigen::Index m = 0; m < g.rows(); ++m)
    {
        const double signal = std::norm(g(m, m));
        sinr(m) = signal / (std::max(row_power(m) - signal, 0.0) + noise_variance);
    }
    return sinr;
}

RateEfficiency sum_rate_and_ee(const CMatrix& h_eq, const CMatrix& b, double noise_variance, double p_total)
{
    if (!(p_total > 0.0))
        throw InvalidArgument("total power must be positive");
    RateEfficiency out;
    const RVector sinr = user_sinr(h_eq, b, noise_variance);
    for (Eigen::Index m = 0; m < sinr.size(); ++m)
        out.sum_rate += std::log2(1.0 + sinr(m));
    out.energy_efficiency = out.sum_rate / p_total;
    return out;
}

} // namespace mimo_ee
