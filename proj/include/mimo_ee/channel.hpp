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
#include <random>

#include "mimo_ee/types.hpp"

namespace mimo_ee
{

/// Independent random streams derived from one scenario seed.
enum class RandomStream : std::uint64_t
{
    Channel = 1,
    HybridInit = 2,
    DmaInit = 3,
};

/// Counter-based seeding: a pure function of (seed, index, stream), so trials
/// can run in any order or in parallel without sharing generator state.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index, RandomStream stream);
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index, RandomStream stream);

/// Sigma = rho * Re{Y_aa} / diag(Y_aa), so every channel entry has power rho.
/// Requires a constant real diagonal and a PSD real part.
RMatrix build_covariance(const CMatrix& y_aa, double entry_power);

struct ChannelModelParams
{
    std::size_t users = 1;
    RMatrix covariance;        // N x N, diag = entry_power
    double entry_power = 1.0;  // rho
    double noise_variance = 0.02;
    std::uint64_t seed = 1;
};

/// Draws M x N correlated Rayleigh channels whose rows are independent
/// CN(0, Sigma). The covariance factor is computed once.
class ChannelSampler
{
  public:
    explicit ChannelSampler(ChannelModelParams params);

    CMatrix sample(std::uint64_t realization) const;

    const ChannelModelParams& params() const { return params_; }
    /// Lower-triangular L with L L^T = Sigma (+ jitter when needed).
    const RMatrix& factor() const { return factor_; }

  private:
    ChannelModelParams params_;
    RMatrix factor_;
};

inline CMatrix sample_channel(const ChannelModelParams& params, std::uint64_t realization)
{
    return ChannelSampler(params).sample(realization);
}

} // namespace mimo_ee
