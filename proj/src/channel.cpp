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

#include "mimo_ee/channel.hpp"

#include <cmath>
#include <string>

namespace mimo_ee
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index, RandomStream stream)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ index);
    return splitmix64(h ^ static_cast<std::uint64_t>(stream));
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index, RandomStream stream)
{
    return std::mt19937_64(mix_seed(seed, index, stream));
}

RMatrix build_covariance(const CMatrix& y_aa, double entry_power)
{
    if (y_aa.rows() != y_aa.cols() || y_aa.rows() == 0)
        throw InvalidArgument("coupling matrix must be square and non-empty");
    if (!(entry_power > 0.0))
        throw InvalidArgument("channel entry power must be positive");

    const double d0 = y_aa(0, 0).real();
    if (!(d0 > 0.0))
        throw InvalidCovariance("coupling matrix diagonal must be real and positive");
    for (Eigen::Index i = 0; i < y_aa.rows(); ++i)
        if (std::abs(y_aa(i, i) - cd(d0, 0.0)) > 1e-12 * d0)
            throw InvalidCovariance("coupling matrix diagonal is not constant");

    RMatrix sigma = (entry_power / d0) * y_aa.real();
    sigma = 0.5 * (sigma + sigma.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<RMatrix> eig(sigma, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo < -1e-10 * hi)
        throw InvalidCovariance("Re{Y_aa} is not positive semidefinite (min eigenvalue " + std::to_string(lo) + ")");
    return sigma;
}

ChannelSampler::ChannelSampler(ChannelModelParams params) : params_(std::move(params))
{
    const RMatrix& sigma = params_.covariance;
    if (sigma.rows() != sigma.cols() || sigma.rows() == 0)
        throw InvalidArgument("channel covariance must be square and non-empty");
    if (params_.users == 0)
        throw InvalidArgument("at least one user is required");
    if (!(params_.noise_variance > 0.0))
        throw InvalidArgument("noise variance must be positive");

    Eigen::LLT<RMatrix> llt(sigma);
    if (llt.info() != Eigen::Success)
    {
        const double jitter = 1e-12 * sigma.trace();
        RMatrix padded = sigma;
        padded.diagonal().array() += jitter;
        llt.compute(padded);
        if (llt.info() != Eigen::Success)
            throw InvalidCovariance("Cholesky factorization failed after diagonal jitter");
    }
    factor_ = llt.matrixL();
}

CMatrix ChannelSampler::sample(std::uint64_t realization) const
{
    const auto m = static_cast<Eigen::Index>(params_.users);
    const auto n = factor_.rows();
    auto engine = make_engine(params_.seed, realization, RandomStream::Channel);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

    CMatrix white(m, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < m; ++i)
        {
            const double re = gauss(engine);
            const double im = gauss(engine);
            white(i, j) = cd(re, im);
        }
    return white * factor_.transpose().cast<cd>();
}

} // namespace mimo_ee
