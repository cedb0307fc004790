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
#include <optional>
#include <string_view>

#include "mimo_ee/types.hpp"

namespace mimo_ee
{

enum class AmplifierModel
{
    Linear,
    Nonlinear,
};

AmplifierModel amplifier_model_from_string(std::string_view name);
std::string_view to_string(AmplifierModel m);

/// What to do when an amplifier is driven past P_sat in the nonlinear model.
enum class SaturationPolicy
{
    Throw,       // SaturationViolation
    Extrapolate, // evaluate the formula anyway
};

struct ConsumptionParams
{
    double p_bb = 0.040;   // baseband (W)
    double p_rf = 0.040;   // per RF chain (W)
    double p_ps = 0.0218;  // per phase shifter (W)
    double p_var = 0.0;    // per varactor (W)
    int dac_bits = 8;
    double dac_rate = 1e8; // F_s (Hz)
    std::optional<double> p_dac; // per DAC (W); derived from b and F_s when unset
    double efficiency = 0.3; // eta_a
    AmplifierModel model = AmplifierModel::Nonlinear;
    double p_sat = 0.0;    // per amplifier (W); calibrated per topology when 0
    double p_sat_fd_factor = 5.0;    // P_sat = factor * P_g^max / N
    double p_sat_other_factor = 3.0; // P_sat = factor * P_g^max / N_t

    double dac() const;

    void validate() const;
};

/// P_dac = 1.5e-5 * 2^b + 9e-12 * b * F_s.
double dac_power(int bits, double sample_rate);

/// Linear: sum(P_out) / eta. Nonlinear: sum(sqrt(P_out * P_sat)) / eta.
double amplifier_power(const RVector& p_out, const ConsumptionParams& params,
                       SaturationPolicy policy = SaturationPolicy::Throw);

/// 5 P/N for the fully-digital array, 3 P/N_t otherwise (factors from `params`).
double calibrated_saturation(Topology t, double max_power, std::size_t antennas, std::size_t transmitters,
                             const ConsumptionParams& params = {});

struct PowerBreakdown
{
    double p_bb = 0.0;
    double p_dac_total = 0.0;
    double p_rf_total = 0.0;
    double p_a = 0.0;
    double p_ps_total = 0.0;
    double p_var_total = 0.0;
    double p_total = 0.0;
};

/// P_bb + N_t (2 P_dac + P_rf) + P_a + N_ps P_ps + N_var P_var.
/// N_ps must be 0 for FD/DMA and N_var 0 for the arrays.
PowerBreakdown total_power(Topology t, std::int64_t n_t, std::int64_t n_ps, std::int64_t n_var, double p_a,
                           const ConsumptionParams& params);

struct RateEfficiency
{
    double sum_rate = 0.0;          // bits/s/Hz
    double energy_efficiency = 0.0; // bits/s/Hz/W
};

/// Per-user SINR from H_eq B with interference from the other streams.
RVector user_sinr(const CMatrix& h_eq, const CMatrix& b, double noise_variance);
RateEfficiency sum_rate_and_ee(const CMatrix& h_eq, const CMatrix& b, double noise_variance, double p_total);

struct EvaluationRecord
{
    Topology topology = Topology::FullyDigital;
    std::size_t trial = 0;
    double mse = 0.0;
    double p_g = 0.0;
    PowerBreakdown power;
    double sum_rate = 0.0;
    double energy_efficiency = 0.0;
    double max_amplifier_output = 0.0;
    bool converged = true;
};

} // namespace mimo_ee
