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


#include <doctest.h>

#include "mimo_ee/precoding.hpp"
#include "oracles/oracles.hpp"
#include "support.hpp"

using namespace mimo_ee;

namespace
{

const WienerParams kScalar{0.02, 1.0, 2.0};
const WienerParams kBaseline{0.02, 1.0, 12.370763333281754};

double fd_mse_dma(const DmaNetwork& net, const RVector& y, const CMatrix& y_rs, const WienerParams& p)
{
    return mse_dma(net.channel(y, y_rs), p);
}

} // namespace

// ---- fully digital -----------------------------------------------------------

TEST_CASE("regularized gram")
{
    CMatrix h = CMatrix::Ones(1, 1);
    CHECK(regularized_gram(h, kScalar)(0, 0).real() == doctest::Approx(1.02));

    const CMatrix zero = CMatrix::Zero(3, 5);
    const CMatrix a = regularized_gram(zero, kBaseline);
    CHECK((a - (3 * 0.02 * kBaseline.generator_admittance / 2.0) * CMatrix::Identity(5, 5)).norm() ==
          doctest::Approx(0.0));

    std::mt19937_64 g(3);
    const CMatrix hr = oracle::random_complex(4, 6, g);
    const CMatrix ar = regularized_gram(hr, kBaseline);
    CHECK((ar - ar.adjoint()).norm() <= 1e-14 * ar.norm());
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(ar);
    CHECK(eig.eigenvalues().minCoeff() >= 4 * 0.02 * kBaseline.generator_admittance / 2.0 * (1 - 1e-12));
}

TEST_CASE("scalar Wiener filter")
{
    const auto s = wf_fd(CMatrix::Ones(1, 1), kScalar);
    CHECK(s.b(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.beta == doctest::Approx(1.02).epsilon(1e-14));
    CHECK(s.mse == doctest::Approx(1.0 - 1.0 / 1.02).epsilon(1e-13));
    CHECK(s.mse == doctest::Approx(0.019608).epsilon(1e-5));
}

TEST_CASE("noiseless limit with orthonormal rows")
{
    CMatrix h = CMatrix::Zero(2, 4);
    h(0, 1) = 1.0;
    h(1, 3) = cd(0.0, 1.0);
    const auto s = wf_fd(h, {1e-12, 1.0, 2.0});
    CHECK(s.mse < 1e-10);
}

TEST_CASE("zero channel is degenerate")
{
    CHECK_THROWS_AS(wf_fd(CMatrix::Zero(2, 3), kBaseline), DegenerateChannel);
    CMatrix h = CMatrix::Ones(2, 2);
    h(0, 0) = cd(std::nan(""), 0.0);
    CHECK_THROWS_AS(wf_fd(h, kBaseline), InvalidArgument);
}

TEST_CASE("direct MSE special cases")
{
    std::mt19937_64 g(5);
    const CMatrix h = oracle::random_complex(3, 3, g);
    const double beta = 1.7;
    CHECK(mse_direct(h, beta * h.inverse(), beta, 0.02) == doctest::Approx(3 * 0.02 / (beta * beta)).epsilon(1e-10));
    CHECK(mse_direct(h, CMatrix::Zero(3, 3), beta, 0.02) == doctest::Approx(3 + 3 * 0.02 / (beta * beta)));
    CHECK_THROWS_AS(mse_direct(h, h, 0.0, 0.02), InvalidArgument);
}

TEST_CASE("direct MSE agrees with a Monte Carlo average")
{
    std::mt19937_64 g(17);
    const CMatrix h = oracle::random_complex(2, 3, g);
    const CMatrix b = oracle::random_complex(3, 2, g, 0.5);
    const double beta = 1.3, sigma2 = 0.1;
    const double want = mse_direct(h, b, beta, sigma2);

    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    const int draws = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < draws; ++k)
    {
        CVector x(2), w(2);
        for (int i = 0; i < 2; ++i)
        {
            x(i) = cd(n(g), n(g));
            w(i) = std::sqrt(sigma2) * cd(n(g), n(g));
        }
        const double e = (x - (h * b * x + w) / beta).squaredNorm();
        sum += e;
        sum2 += e * e;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
    CHECK(std::abs(mean - want) <= 3.0 * se);
}

TEST_CASE("closed form equals the direct objective and is power-tight")
{
    std::mt19937_64 g(19);
    for (int k = 0; k < 100; ++k)
    {
        const CMatrix h = oracle::random_complex(3, 7, g);
        const auto s = wf_fd(h, kBaseline);
        CHECK(mse_direct(h, s.b, s.beta, kBaseline.noise_variance) == doctest::Approx(s.mse).epsilon(1e-10));
        CHECK(supplied_power(s.b, kBaseline.generator_admittance) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.mse > 0.0);
        CHECK(s.mse <= 3.0);
    }
}

TEST_CASE("closed form beats random feasible precoders")
{
    std::mt19937_64 g(23);
    for (int inst = 0; inst < 5; ++inst)
    {
        const CMatrix h = oracle::random_complex(3, 6, g);
        const auto s = wf_fd(h, kBaseline);
        for (int k = 0; k < 100; ++k)
        {
            CMatrix b = oracle::random_complex(6, 3, g);
            b *= std::sqrt(2.0 / (kBaseline.generator_admittance * b.squaredNorm()));
            // best beta for this direction: a 1-D convex problem in 1/beta
            const CMatrix hb = h * b;
            const double t = hb.trace().real() / (hb.squaredNorm() + 3 * kBaseline.noise_variance);
            if (t <= 0.0)
                continue;
            CHECK(s.mse <= mse_direct(h, b, 1.0 / t, kBaseline.noise_variance) + 1e-8);
        }
    }
}

TEST_CASE("closed form matches a black-box constrained minimizer")
{
    std::mt19937_64 g(29);
    const WienerParams p{0.05, 1.0, 2.0};
    for (int inst = 0; inst < 3; ++inst)
    {
        const CMatrix h = oracle::random_complex(2, 3, g);
        // 12 real parameters for the direction plus log(beta); power fixed by normalization
        auto objective = [&](const RVector& v) {
            CMatrix d(3, 2);
            for (int i = 0; i < 6; ++i)
                d(i % 3, i / 3) = cd(v(2 * i), v(2 * i + 1));
            const CMatrix b = d * std::sqrt(2.0 * p.max_power / (p.generator_admittance * d.squaredNorm()));
            return oracle::wiener_objective(h, b, std::exp(v(12)), p.noise_variance);
        };
        RVector x0 = fixture::uniform_vector(13, -1.0, 1.0, g);
        x0(12) = 0.0;
        const RVector x = oracle::bfgs_numeric(objective, x0);
        CHECK(std::abs(objective(x) - wf_fd(h, p).mse) <= 1e-6);
    }
}

// ---- hybrid ---------------------------------------------------------------

TEST_CASE("hybrid with identity analog stage reduces to fully digital")
{
    std::mt19937_64 g(31);
    for (int k = 0; k < 20; ++k)
    {
        const CMatrix h = oracle::random_complex(4, 8, g);
        auto net = PhaseNetwork::partially_connected(build_layout(8, 1, 0.5, 1.0));
        const CMatrix q = net.q();
        CHECK((q - CMatrix::Identity(8, 8)).norm() == 0.0);
        const double fd = wf_fd(h, kBaseline).mse;
        CHECK(std::abs(mse_hybrid(h, q, kBaseline) - fd) <= 1e-12 * fd);
        const auto s = hybrid_closed_form(h, net, kBaseline);
        CHECK(std::abs(s.mse - fd) <= 1e-12 * fd);
    }
}

TEST_CASE("hybrid MSE special cases and self-consistency")
{
    std::mt19937_64 g(37);
    auto net = fixture::random_network(3, 4, g);
    CHECK(mse_hybrid(CMatrix::Zero(2, 12), net.q(), kBaseline) == doctest::Approx(2.0));

    for (int k = 0; k < 20; ++k)
    {
        const CMatrix h = oracle::random_complex(2, 12, g);
        net = fixture::random_network(3, 4, g);
        const auto s = hybrid_closed_form(h, net, kBaseline);
        CHECK(mse_hybrid(h, net.q(), kBaseline) == doctest::Approx(s.mse).epsilon(1e-12));
        CHECK(mse_direct(h * net.q(), s.b, s.beta, kBaseline.noise_variance) == doctest::Approx(s.mse).epsilon(1e-10));
        CHECK(supplied_power(s.precoder, kBaseline.generator_admittance) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(supplied_power_hybrid(s.b, kBaseline.generator_admittance, net.fanout()) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("analog stage is unit modulus with orthogonal columns")
{
    std::mt19937_64 g(41);
    const auto net = fixture::random_network(4, 5, g);
    const CMatrix q = net.q();
    CHECK((q.adjoint() * q - 5.0 * CMatrix::Identity(4, 4)).norm() <= 1e-12);
    for (Eigen::Index i = 0; i < q.rows(); ++i)
        CHECK(q.row(i).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("hybrid gradient matches finite differences")
{
    std::mt19937_64 g(43);
    for (int k = 0; k < 20; ++k)
    {
        const CMatrix h = oracle::random_complex(3, 12, g);
        auto net = fixture::random_network(4, 3, g);
        const auto cols = net.connections();
        const RMatrix grad = grad_hybrid(h, net.q(), kBaseline);
        const RVector angles = net.active_angles();
        RVector analytic(angles.size()), numeric(angles.size());
        for (Eigen::Index i = 0; i < angles.size(); ++i)
        {
            analytic(i) = grad(i, cols[static_cast<std::size_t>(i)]);
            numeric(i) = oracle::central_difference(
                [&](double a) {
                    auto work = net;
                    RVector x = angles;
                    x(i) = a;
                    work.set_active_angles(x);
                    return mse_hybrid(h, work.q(), kBaseline);
                },
                angles(i), 1e-6);
        }
        CHECK(fixture::rel_inf_error(analytic, numeric) <= 1e-5);
    }
}

TEST_CASE("single-user single-transmitter hybrid matches an angle grid search")
{
    std::mt19937_64 g(47);
    for (int k = 0; k < 3; ++k)
    {
        const CMatrix h = oracle::random_complex(1, 2, g);
        auto net = PhaseNetwork::partially_connected(build_layout(1, 2, 0.5, 1.0));
        // the common phase is irrelevant; scan the relative angle only
        const auto grid = oracle::grid_min(
            [&](double a) {
                auto work = net;
                work.set_active_angles(RVector::Map(std::array<double, 2>{0.0, a}.data(), 2));
                return mse_hybrid(h, work.q(), kBaseline);
            },
            0.0, 2.0 * kPi, 1e-3);
        OptimizerSettings opt;
        opt.seed = static_cast<std::uint64_t>(k);
        const auto s = wf_hybrid(h, net, kBaseline, opt);
        CHECK(std::abs(s.mse - grid.second) <= 1e-5);

        // phase alignment: every antenna adds coherently
        const double aligned = h.cwiseAbs().sum();
        const double c = kBaseline.noise_variance * kBaseline.generator_admittance / 2.0;
        CHECK(s.mse == doctest::Approx(1.0 - aligned * aligned / (aligned * aligned + 2.0 * c)).epsilon(1e-8));
    }
}

TEST_CASE("hybrid optimizer: monotone trace, periodicity, power")
{
    std::mt19937_64 g(53);
    const CMatrix h = oracle::random_complex(3, 12, g);
    const auto net = PhaseNetwork::partially_connected(build_layout(3, 4, 0.5, 1.0));
    OptimizerSettings opt;
    opt.seed = 7;
    const auto s = wf_hybrid(h, net, kBaseline, opt);
    for (std::size_t i = 1; i < s.mse_trace.size(); ++i)
        CHECK(s.mse_trace[i] <= s.mse_trace[i - 1]);
    CHECK(s.mse <= s.mse_trace.front());
    CHECK(supplied_power(s.precoder, kBaseline.generator_admittance) == doctest::Approx(1.0).epsilon(1e-12));

    auto shifted = net;
    shifted.set_active_angles(s.analog_state.array() + 2.0 * kPi);
    auto base = net;
    base.set_active_angles(s.analog_state);
    CHECK(mse_hybrid(h, shifted.q(), kBaseline) == doctest::Approx(mse_hybrid(h, base.q(), kBaseline)).epsilon(1e-12));

    // same seed, same answer
    CHECK(wf_hybrid(h, net, kBaseline, opt).mse == s.mse);
}

// ---- DMA --------------------------------------------------------------------

TEST_CASE("DMA MSE: special cases")
{
    CHECK(mse_dma(CMatrix::Zero(3, 2), kBaseline) == doctest::Approx(3.0));
    CMatrix h = CMatrix::Zero(2, 4);
    const double gain = 0.7;
    h(0, 0) = gain;
    h(1, 2) = gain;
    const double want = 2.0 / (1.0 + 2.0 * gain * gain / (2.0 * 0.02 * kBaseline.generator_admittance));
    CHECK(mse_dma(h, kBaseline) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("DMA MSE equals the Wiener filter residual")
{
    std::mt19937_64 g(59);
    for (int k = 0; k < 100; ++k)
    {
        std::uniform_int_distribution<int> dm(1, 4), dn(1, 12);
        const int m = dm(g), n = dn(g);
        const CMatrix h = oracle::random_complex(m, n, g);
        const double a = mse_dma(h, kBaseline);
        const double b = wf_fd(h, kBaseline).mse;
        CHECK(std::abs(a - b) <= 1e-10 * b);
    }
}

TEST_CASE("DMA channel matches a dense evaluation")
{
    std::mt19937_64 g(61);
    const auto net = fixture::small_dma(2, 3);
    const RVector y = fixture::uniform_vector(6, -35.0, 35.0, g);
    const CMatrix y_rs = oracle::random_complex(2, 6, g);
    CMatrix z = net.y_ss();
    z.diagonal().array() += cd(net.loss(), 0.0);
    z.diagonal() += kI * y.cast<cd>();
    const CMatrix y_p = net.y_tt() - net.y_st().transpose() * z.inverse() * net.y_st();
    const CMatrix w = y_p + net.generator_admittance() * CMatrix::Identity(2, 2);
    const CMatrix dense =
        net.receive_scaling() * net.generator_admittance() * y_rs * z.inverse() * net.y_st() * w.inverse();
    const CMatrix h = net.channel(y, y_rs);
    CHECK((h - dense).norm() <= 1e-12 * dense.norm());

    // diagonal network: every element is its own little FD-like chain
    CMatrix y_st = CMatrix::Zero(3, 3);
    y_st.diagonal().setConstant(cd(0.0, 4.0));
    CMatrix y_ss = CMatrix::Zero(3, 3);
    y_ss.diagonal() << cd(0, 2), cd(0, -1), cd(0, 5);
    const CMatrix y_tt = CMatrix::Identity(3, 3) * cd(0.0, 1.0);
    const DmaNetwork diag(y_tt, y_st, y_ss, 0.2, 35.33, 0.28);
    const RVector yd = RVector::Constant(3, 1.5);
    const CMatrix rs = oracle::random_complex(2, 3, g);
    const CMatrix hd = diag.channel(yd, rs);
    for (int n = 0; n < 3; ++n)
    {
        const cd zn = 0.2 + y_ss(n, n) + cd(0.0, 1.5);
        const cd yp = y_tt(n, n) - y_st(n, n) * y_st(n, n) / zn;
        for (int m = 0; m < 2; ++m)
            CHECK(std::abs(hd(m, n) - 0.28 * 35.33 * rs(m, n) * y_st(n, n) / (zn * (35.33 + yp))) <= 1e-12);
    }
}

TEST_CASE("DMA gradient matches finite differences")
{
    std::mt19937_64 g(67);
    for (int k = 0; k < 20; ++k)
    {
        const auto net = fixture::small_dma(k % 2 ? 3 : 2, k % 3 + 2);
        const auto n = static_cast<Eigen::Index>(net.elements());
        const CMatrix y_rs = oracle::random_complex(3, n, g);
        const RVector y = fixture::uniform_vector(n, -35.33, 35.33, g);
        const WienerParams p{0.02, 1.0, net.generator_admittance()};
        const RVector analytic = grad_ys(net, y, y_rs, p);
        RVector numeric(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            numeric(i) = oracle::central_difference(
                [&](double v) {
                    RVector x = y;
                    x(i) = v;
                    return fd_mse_dma(net, x, y_rs, p);
                },
                y(i), 1e-4 * std::max(1.0, std::abs(y(i))));
        }
        CHECK(fixture::rel_inf_error(analytic, numeric) <= 1e-4);
    }
}

TEST_CASE("DMA gradient: hand-differentiated single element")
{
    const DmaNetwork net(CMatrix::Constant(1, 1, cd(3.0, 8.0)), CMatrix::Constant(1, 1, cd(0.0, 5.0)),
                         CMatrix::Constant(1, 1, cd(0.0, -2.0)), 0.1, 35.33, 0.28);
    const WienerParams p{0.02, 1.0, 35.33};
    const CMatrix y_rs = CMatrix::Constant(1, 1, cd(0.6, -0.3));
    const double s = 2.0 / (0.02 * 35.33);
    for (double y : {-20.0, -3.0, 0.5, 7.0, 30.0})
    {
        const cd z = 0.1 + cd(0.0, -2.0) + cd(0.0, y);
        const cd yst = cd(0.0, 5.0), ytt = cd(3.0, 8.0);
        const cd d = z * (35.33 + ytt) - yst * yst;
        const cd h = 0.28 * 35.33 * y_rs(0, 0) * yst / d;
        const cd dh = -h * kI * (35.33 + ytt) / d;
        const double dabs2 = 2.0 * (std::conj(h) * dh).real();
        const double q = 1.0 + s * std::norm(h);
        const double want = -s * dabs2 / (q * q);
        CHECK(grad_ys(net, RVector::Constant(1, y), y_rs, p)(0) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("zero tap coupling gives a zero gradient")
{
    const DmaNetwork net(CMatrix::Identity(2, 2) * 10.0, CMatrix::Zero(4, 2), CMatrix::Identity(4, 4) * cd(0, 3),
                         0.1, 35.33, 0.28);
    std::mt19937_64 g(71);
    const CMatrix y_rs = oracle::random_complex(2, 4, g);
    const RVector grad = grad_ys(net, RVector::Constant(4, 1.0), y_rs, {0.02, 1.0, 35.33});
    CHECK(grad.norm() == 0.0);
}

TEST_CASE("single-element DMA optimum matches a golden-section search")
{
    const auto net = fixture::small_dma(1, 1);
    const WienerParams p{0.02, 1.0, net.generator_admittance()};
    std::mt19937_64 g(73);
    for (int k = 0; k < 3; ++k)
    {
        const CMatrix y_rs = oracle::random_complex(1, 1, g);
        auto f = [&](double v) { return fd_mse_dma(net, RVector::Constant(1, v), y_rs, p); };
        const double range = 10.0 * net.generator_admittance();
        const auto coarse = oracle::grid_min(f, -range, range, 0.01);
        const auto fine = oracle::golden_section(f, coarse.first - 0.02, coarse.first + 0.02, 1e-10);

        OptimizerSettings opt;
        opt.restarts = 4;
        opt.seed = static_cast<std::uint64_t>(k);
        const auto s = wf_dma(net, y_rs, p, opt);
        CHECK(std::abs(s.mse - fine.second) <= 1e-5);
    }
}

TEST_CASE("DMA optimizer: monotone trace, power tightness, frozen closed form")
{
    const auto net = fixture::small_dma(2, 4);
    const WienerParams p{0.02, 1.0, net.generator_admittance()};
    std::mt19937_64 g(79);
    const CMatrix y_rs = oracle::random_complex(2, 8, g);
    OptimizerSettings opt;
    opt.seed = 3;
    opt.max_iterations = 200;
    const auto s = wf_dma(net, y_rs, p, opt);
    for (std::size_t i = 1; i < s.mse_trace.size(); ++i)
        CHECK(s.mse_trace[i] <= s.mse_trace[i - 1]);
    CHECK(s.mse == doctest::Approx(s.mse_trace.back()).epsilon(1e-12));
    CHECK(supplied_power(s.b, p.generator_admittance) == doctest::Approx(1.0).epsilon(1e-12));

    const CMatrix h = net.channel(s.analog_state, y_rs);
    const CMatrix a = h.adjoint() * h + (2 * 0.02 * p.generator_admittance / 2.0) * CMatrix::Identity(2, 2);
    const CMatrix dir = a.inverse() * h.adjoint();
    const double beta = std::sqrt(2.0 / (p.generator_admittance * dir.squaredNorm()));
    CHECK((s.b - beta * dir).norm() <= 1e-10 * s.b.norm());
    CHECK(s.beta == doctest::Approx(beta).epsilon(1e-10));
}

TEST_CASE("DMA solver rejects mismatched inputs")
{
    const auto net = fixture::small_dma(1, 2);
    CHECK_THROWS_AS(wf_dma(net, CMatrix::Ones(1, 3), {0.02, 1.0, 35.33}, {}), InvalidArgument);
    CHECK_THROWS_AS(wf_dma(net, CMatrix::Ones(1, 2), {0.02, 1.0, 12.0}, {}), InvalidArgument);
    CHECK_THROWS_AS(wf_dma(net, CMatrix::Zero(1, 2), {0.02, 1.0, 35.33}, {}), DegenerateChannel);
}
