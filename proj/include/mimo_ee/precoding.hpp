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

#include <vector>

#include "mimo_ee/optimizer.hpp"
#include "mimo_ee/topology.hpp"

namespace mimo_ee
{

/// Noise, power budget and generator admittance shared by every solver.
struct WienerParams
{
    double noise_variance;  // sigma_n^2
    double max_power;       // P_g^max (W)
    double generator_admittance; // Y_g (S)
};

struct PrecoderSolution
{
    Topology topology = Topology::FullyDigital;
    CMatrix b;              // N x M (FD), N_t x M (hybrid: B_h, DMA)
    double beta = 0.0;
    RVector analog_state;   // active phases (hybrid), y_im (DMA), empty (FD)
    CMatrix channel;        // channel seen by b: H_a, H_a Q or H_d
    CMatrix precoder;       // what the generators drive: Q B_h for hybrid, b otherwise
    double mse = 0.0;
    std::size_t iterations = 0;
    bool converged = true;
    std::vector<double> mse_trace;
};

/// A = H^H H + (M sigma^2 Y_g / (2 P)) I.
CMatrix regularized_gram(const CMatrix& h, const WienerParams& p);

/// Closed-form transmit Wiener filter. Throws DegenerateChannel for H = 0.
PrecoderSolution wf_fd(const CMatrix& h, const WienerParams& p);

/// tr((I - HB/beta)(I - HB/beta)^H) + M sigma^2 / beta^2.
double mse_direct(const CMatrix& h, const CMatrix& b, double beta, double noise_variance);

// ---- hybrid ---------------------------------------------------------------

/// tr(I - H Q (Q^H A Q)^{-1} Q^H H^H).
double mse_hybrid(const CMatrix& h, const CMatrix& q, const WienerParams& p);

/// dMSE/dTheta as an N x N_t matrix; zero wherever Q is zero.
RMatrix grad_hybrid(const CMatrix& h, const CMatrix& q, const WienerParams& p);

/// B_h = beta (Q^H A Q)^{-1} Q^H H^H with beta meeting the power budget
/// through B = Q B_h.
PrecoderSolution hybrid_closed_form(const CMatrix& h, const PhaseNetwork& net, const WienerParams& p);

/// Optimizes the active phases; random starts come from settings.seed.
PrecoderSolution wf_hybrid(const CMatrix& h, const PhaseNetwork& net, const WienerParams& p,
                           const OptimizerSettings& settings);
/// Same, starting from the phases already in `net` (single start).
PrecoderSolution wf_hybrid_from(const CMatrix& h, const PhaseNetwork& net, const WienerParams& p,
                                const OptimizerSettings& settings);

// ---- DMA --------------------------------------------------------------------

/// tr(G^{-1}), G = I + (2P / (M sigma^2 Y_g)) H H^H.
double mse_dma(const CMatrix& h_d, const WienerParams& p);

/// dMSE/dy_im for every element, evaluated at a factorized state.
RVector grad_ys(const DmaNetwork& net, const DmaNetwork::State& state, const CMatrix& y_rs, const WienerParams& p);
RVector grad_ys(const DmaNetwork& net, const RVector& y_im, const CMatrix& y_rs, const WienerParams& p);

/// Wiener filter for frozen loads.
PrecoderSolution dma_closed_form(const DmaNetwork& net, const RVector& y_im, const CMatrix& y_rs,
                                 const WienerParams& p);

/// Optimizes the load susceptances; random starts from settings.seed.
PrecoderSolution wf_dma(const DmaNetwork& net, const CMatrix& y_rs, const WienerParams& p,
                        const OptimizerSettings& settings);
PrecoderSolution wf_dma_from(const DmaNetwork& net, const CMatrix& y_rs, const RVector& y_im0,
                             const WienerParams& p, const OptimizerSettings& settings);

} // namespace mimo_ee
