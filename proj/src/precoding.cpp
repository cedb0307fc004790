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

#include "mimo_ee/precoding.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "mimo_ee/channel.hpp"

namespace mimo_ee
{

namespace
{

void check_params(const WienerParams& p)
{
    if (!(p.noise_variance > 0.0) || !(p.max_power > 0.0) || !(p.generator_admittance > 0.0))
        throw InvalidArgument("noise variance, power budget and Y_g must be positive");
}

// M sigma^2 Y_g / (2P)
double regularizer(Eigen::Index users, const WienerParams& p)
{
    return static_cast<double>(users) * p.noise_variance * p.generator_admittance / (2.0 * p.max_power);
}

Eigen::LLT<CMatrix> factor_pd(const CMatrix& k, const char* what)
{
    Eigen::LLT<CMatrix> llt(k);
    if (llt.info() != Eigen::Success)
        throw SingularMatrix(what, 0.0);
    return llt;
}

// Power-tightening scale for a precoder direction whose antenna image is `x`.
double tighten(const CMatrix& x, const WienerParams& p)
{
    const double norm2 = x.squaredNorm();
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw DegenerateChannel("precoder direction vanishes; beta is undefined");
    return std::sqrt(2.0 * p.max_power / (p.generator_admittance * norm2));
}

// Keeps the best of several optimizer runs.
struct BestRun
{
    OptimizationResult result;
    bool set = false;

    void offer(OptimizationResult r)
    {
        if (!set || r.value < result.value)
        {
            result = std::move(r);
            set = true;
        }
    }
};

} // namespace

CMatrix regularized_gram(const CMatrix& h, const WienerParams& p)
{
    check_params(p);
    CMatrix a = h.adjoint() * h;
    a.diagonal().array() += regularizer(h.rows(), p);
    return a;
}

PrecoderSolution wf_fd(const CMatrix& h, const WienerParams& p)
{
    if (!h.allFinite())
        throw InvalidArgument("channel has non-finite entries");
    if (h.squaredNorm() == 0.0)
        throw DegenerateChannel("zero channel");

    const auto llt = factor_pd(regularized_gram(h, p), "A");
    const CMatrix x = llt.solve(h.adjoint());

    PrecoderSolution s;
    s.topology = Topology::FullyDigital;
    s.beta = tighten(x, p);
    s.b = s.beta * x;
    s.channel = h;
    s.precoder = s.b;
    s.mse = static_cast<double>(h.rows()) - (h * x).trace().real();
    s.mse_trace = {s.mse};
    return s;
}

double mse_direct(const CMatrix& h, const CMatrix& b, double beta, double noise_variance)
{
    if (!(beta > 0.0))
        throw InvalidArgument("beta must be positive");
    const auto m = h.rows();
    const CMatrix e = CMatrix::Identity(m, m) - (h * b) / beta;
    return e.squaredNorm() + static_cast<double>(m) * noise_variance / (beta * beta);
}

// ---- hybrid ---------------------------------------------------------------

namespace
{

// K = Q^H A Q written as (HQ)^H (HQ) + c Q^H Q.
CMatrix hybrid_gram(const CMatrix& g, const CMatrix& q, double c)
{
    CMatrix k = g.adjoint() * g;
    k.noalias() += c * (q.adjoint() * q);
    return k;
}

} // namespace

double mse_hybrid(const CMatrix& h, const CMatrix& q, const WienerParams& p)
{
    check_params(p);
    const CMatrix g = h * q;
    const auto llt = factor_pd(hybrid_gram(g, q, regularizer(h.rows(), p)), "Q^H A Q");
    return static_cast<double>(h.rows()) - (g * llt.solve(g.adjoint())).trace().real();
}

RMatrix grad_hybrid(const CMatrix& h, const CMatrix& q, const WienerParams& p)
{
    check_params(p);
    const double c = regularizer(h.rows(), p);
    const CMatrix g = h * q;
    const auto llt = factor_pd(hybrid_gram(g, q, c), "Q^H A Q");

    // C_h = K^{-1} Q^H, X = C_h H^H H, R = X (I - Q C_h A) = X - (X Q)(X + c C_h)
    const CMatrix ch = llt.solve(q.adjoint());
    const CMatrix x = llt.solve(g.adjoint() * h);
    const CMatrix xq = x * q;
    CMatrix r = x;
    r.noalias() -= xq * (x + c * ch);
    return 2.0 * (r.transpose().array() * q.array()).imag().matrix();
}

PrecoderSolution hybrid_closed_form(const CMatrix& h, const PhaseNetwork& net, const WienerParams& p)
{
    check_params(p);
    if (h.squaredNorm() == 0.0)
        throw DegenerateChannel("zero channel");
    const CMatrix q = net.q();
    const CMatrix g = h * q;
    const auto llt = factor_pd(hybrid_gram(g, q, regularizer(h.rows(), p)), "Q^H A Q");
    const CMatrix x = llt.solve(g.adjoint());

    PrecoderSolution s;
    s.topology = Topology::Hybrid;
    s.beta = tighten(q * x, p);
    s.b = s.beta * x;
    s.channel = g;
    s.precoder = q * s.b;
    s.analog_state = net.active_angles();
    s.mse = static_cast<double>(h.rows()) - (g * x).trace().real();
    s.mse_trace = {s.mse};
    return s;
}

namespace
{

OptimizationResult optimize_hybrid(const CMatrix& h, const PhaseNetwork& net, const WienerParams& p,
                                   const OptimizerSettings& settings, RVector x0)
{
    PhaseNetwork work = net;
    const auto cols = net.connections();
    Objective f = [&](const RVector& angles, RVector* grad) {
        work.set_active_angles(angles);
        const CMatrix q = work.q();
        if (grad)
        {
            const RMatrix g = grad_hybrid(h, q, p);
            grad->resize(angles.size());
            for (Eigen::Index i = 0; i < angles.size(); ++i)
                (*grad)(i) = g(i, cols[static_cast<std::size_t>(i)]);
        }
        return mse_hybrid(h, q, p);
    };
    return minimize(f, std::move(x0), settings);
}

PrecoderSolution finish_hybrid(const CMatrix& h, PhaseNetwork net, const WienerParams& p, OptimizationResult r)
{
    net.set_active_angles(r.x);
    PrecoderSolution s = hybrid_closed_form(h, net, p);
    s.iterations = r.iterations;
    s.converged = r.converged;
    s.mse_trace = std::move(r.trace);
    return s;
}

} // namespace

PrecoderSolution wf_hybrid(const CMatrix& h, const PhaseNetwork& net, const WienerParams& p,
                           const OptimizerSettings& settings)
{
    check_params(p);
    settings.validate();
    net.validate();
    if (h.squaredNorm() == 0.0)
        throw DegenerateChannel("zero channel");

    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    BestRun best;
    for (std::size_t r = 0; r < settings.restarts; ++r)
    {
        auto engine = make_engine(settings.seed, r, RandomStream::HybridInit);
        RVector x0(static_cast<Eigen::Index>(net.antennas()));
        for (Eigen::Index i = 0; i < x0.size(); ++i)
            x0(i) = angle(engine);
        best.offer(optimize_hybrid(h, net, p, settings, std::move(x0)));
    }
    return finish_hybrid(h, net, p, std::move(best.result));
}

PrecoderSolution wf_hybrid_from(const CMatrix& h, const PhaseNetwork& net, const WienerParams& p,
                                const OptimizerSettings& settings)
{
    check_params(p);
    net.validate();
    if (h.squaredNorm() == 0.0)
        throw DegenerateChannel("zero channel");
    return finish_hybrid(h, net, p, optimize_hybrid(h, net, p, settings, net.active_angles()));
}

// ---- DMA --------------------------------------------------------------------

double mse_dma(const CMatrix& h_d, const WienerParams& p)
{
    check_params(p);
    const auto m = h_d.rows();
    const double s = 2.0 * p.max_power / (static_cast<double>(m) * p.noise_variance * p.generator_admittance);
    CMatrix g = s * (h_d * h_d.adjoint());
    g.diagonal().array() += 1.0;
    const auto llt = factor_pd(g, "G");
    return llt.solve(CMatrix::Identity(m, m)).trace().real();
}

RVector grad_ys(const DmaNetwork& net, const DmaNetwork::State& state, const CMatrix& y_rs, const WienerParams& p)
{
    check_params(p);
    const auto m = y_rs.rows();
    const double y_g = p.generator_admittance;
    const double alpha = net.receive_scaling();
    const CMatrix h = net.channel(state, y_rs);

    const double s = 2.0 * p.max_power / (static_cast<double>(m) * p.noise_variance * y_g);
    CMatrix g = s * (h * h.adjoint());
    g.diagonal().array() += 1.0;
    const auto llt = factor_pd(g, "G");
    const CMatrix g_inv = llt.solve(CMatrix::Identity(m, m));

    // T = Z^{-1} Y_st W^{-1} H^H G^{-2} V Z^{-1}, V = Y_rs + H Y_st^T / (alpha Y_g);
    // only diag(T) is needed, so the two halves are formed separately.
    const CMatrix left = state.z_inv_st * state.w_lu.solve(h.adjoint() * (g_inv * g_inv)); // N x M
    const CMatrix v = y_rs + (h * net.y_st().transpose()) / (alpha * y_g);                 // M x N
    const CMatrix right_t = state.z_lu.transpose().solve(v.transpose());                    // (V Z^{-1})^T

    const CVector diag = (left.array() * right_t.array()).rowwise().sum();
    const double scale = -4.0 * p.max_power * alpha / (static_cast<double>(m) * p.noise_variance);
    return scale * diag.imag();
}

RVector grad_ys(const DmaNetwork& net, const RVector& y_im, const CMatrix& y_rs, const WienerParams& p)
{
    return grad_ys(net, net.factorize(y_im), y_rs, p);
}

PrecoderSolution dma_closed_form(const DmaNetwork& net, const RVector& y_im, const CMatrix& y_rs,
                                 const WienerParams& p)
{
    PrecoderSolution s = wf_fd(net.channel(y_im, y_rs), p);
    s.topology = Topology::Dma;
    s.analog_state = y_im;
    return s;
}

namespace
{

OptimizationResult optimize_dma(const DmaNetwork& net, const CMatrix& y_rs, const WienerParams& p,
                                const OptimizerSettings& settings, RVector x0)
{
    Objective f = [&](const RVector& y_im, RVector* grad) {
        DmaNetwork::State state;
        try
        {
            state = net.factorize(y_im);
        }
        catch (const SingularMatrix&)
        {
            // Resonant load: reject the step, the line search backs off.
            return std::numeric_limits<double>::infinity();
        }
        if (grad)
            *grad = grad_ys(net, state, y_rs, p);
        return mse_dma(net.channel(state, y_rs), p);
    };
    return minimize(f, std::move(x0), settings);
}

PrecoderSolution finish_dma(const DmaNetwork& net, const CMatrix& y_rs, const WienerParams& p, OptimizationResult r)
{
    PrecoderSolution s = dma_closed_form(net, r.x, y_rs, p);
    s.iterations = r.iterations;
    s.converged = r.converged;
    s.mse_trace = std::move(r.trace);
    return s;
}

void check_dma(const DmaNetwork& net, const CMatrix& y_rs, const WienerParams& p)
{
    check_params(p);
    if (static_cast<std::size_t>(y_rs.cols()) != net.elements())
        throw InvalidArgument("channel draw does not match DMA element count");
    if (y_rs.squaredNorm() == 0.0)
        throw DegenerateChannel("zero channel");
    if (std::abs(p.generator_admittance - net.generator_admittance()) > 1e-12 * net.generator_admittance())
        throw InvalidArgument("Y_g differs between the DMA network and the solver parameters");
}

} // namespace

PrecoderSolution wf_dma(const DmaNetwork& net, const CMatrix& y_rs, const WienerParams& p,
                        const OptimizerSettings& settings)
{
    check_dma(net, y_rs, p);
    settings.validate();

    const double y_g = p.generator_admittance;
    std::uniform_real_distribution<double> load(-y_g, y_g);
    BestRun best;
    for (std::size_t r = 0; r < settings.restarts; ++r)
    {
        auto engine = make_engine(settings.seed, r, RandomStream::DmaInit);
        RVector x0(static_cast<Eigen::Index>(net.elements()));
        for (Eigen::Index i = 0; i < x0.size(); ++i)
            x0(i) = load(engine);
        best.offer(optimize_dma(net, y_rs, p, settings, std::move(x0)));
    }
    return finish_dma(net, y_rs, p, std::move(best.result));
}

PrecoderSolution wf_dma_from(const DmaNetwork& net, const CMatrix& y_rs, const RVector& y_im0,
                             const WienerParams& p, const OptimizerSettings& settings)
{
    check_dma(net, y_rs, p);
    return finish_dma(net, y_rs, p, optimize_dma(net, y_rs, p, settings, y_im0));
}

} // namespace mimo_ee
