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

#include "mimo_ee/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <spdlog/spdlog.h>

namespace mimo_ee
{

HarnessStats& HarnessStats::operator+=(const HarnessStats& o)
{
    redraws += o.redraws;
    saturation_margin += o.saturation_margin;
    saturation_overrun += o.saturation_overrun;
    not_converged += o.not_converged;
    return *this;
}

PointModel PointModel::build(const Scenario& s)
{
    s.validate();
    PointModel p;
    p.scenario = s;
    p.consts = build_constants(s.geometry.frequency);
    const double lambda = p.consts.wavelength;
    p.layout = build_layout(s.geometry.n_transmitters, s.geometry.n_per_tx, s.geometry.spacing_x * lambda,
                            s.geometry.spacing_z * lambda);
    p.y_aa = mutual_admittance_array(p.layout, p.consts);
    p.y_g_array = s.array.y_g.value_or(p.consts.radiation_conductance());

    ChannelModelParams cp;
    cp.users = s.channel.users;
    cp.entry_power = s.channel.rho;
    cp.noise_variance = s.channel.sigma_n2;
    cp.covariance = build_covariance(p.y_aa, s.channel.rho);
    cp.seed = s.seed;
    p.sampler = std::make_shared<const ChannelSampler>(std::move(cp));

    const bool arrays = std::any_of(s.topologies.begin(), s.topologies.end(),
                                    [](Topology t) { return t != Topology::Dma; });
    const bool dma = std::find(s.topologies.begin(), s.topologies.end(), Topology::Dma) != s.topologies.end();
    if (arrays)
        p.array_map = std::make_shared<const ArrayChannelMap>(p.y_aa, p.y_g_array, p.consts);
    if (dma)
    {
        const auto wg = build_waveguide(p.consts, s.dma.a * lambda, s.dma.b * lambda, s.dma.kx_lw, s.dma.y_g);
        const auto model = make_coupling_model(s.dma.coupling_model);
        const double kappa = s.dma.tap_coupling.value_or(critical_tap_coupling(p.consts, wg));
        DmaLoadState load{RVector::Zero(static_cast<Eigen::Index>(p.layout.size())), s.dma.r_s};
        const auto set = dma_admittances(p.layout, wg, p.consts, load, *model, kappa, s.dma.y_g);
        p.dma = std::make_shared<const DmaNetwork>(DmaNetwork::from_admittances(set, p.consts));
    }
    return p;
}

std::string record_label(Topology t, const std::string& variant)
{
    std::string out(to_string(t));
    if (!variant.empty())
        out += "@" + variant;
    return out;
}

EvaluationRecord evaluate(const PointModel& point, const PrecoderSolution& sol, const ConsumptionParams& params,
                          std::size_t trial, HarnessStats* stats)
{
    const Scenario& s = point.scenario;
    const auto n = static_cast<std::int64_t>(point.antennas());
    const auto nt = static_cast<std::int64_t>(s.geometry.n_transmitters);

    EvaluationRecord r;
    r.topology = sol.topology;
    r.trial = trial;
    r.mse = sol.mse;
    r.converged = sol.converged;

    RVector p_out;
    std::int64_t chains = nt, n_ps = 0, n_var = 0;
    switch (sol.topology)
    {
    case Topology::FullyDigital:
        r.p_g = supplied_power(sol.precoder, point.y_g_array);
        p_out = per_amplifier_output(sol.b, point.y_g_array);
        chains = n;
        break;
    case Topology::Hybrid:
        r.p_g = supplied_power(sol.precoder, point.y_g_array);
        p_out = per_amplifier_output(sol.b, point.y_g_array, static_cast<double>(n) / static_cast<double>(nt));
        n_ps = n;
        break;
    case Topology::Dma:
        r.p_g = supplied_power(sol.precoder, s.dma.y_g);
        p_out = per_amplifier_output(sol.b, s.dma.y_g);
        n_var = n;
        break;
    }
    r.max_amplifier_output = p_out.maxCoeff();

    ConsumptionParams cp = params;
    if (cp.p_sat == 0.0)
        cp.p_sat = calibrated_saturation(sol.topology, s.max_power, point.antennas(), s.geometry.n_transmitters, cp);
    if (stats && cp.model == AmplifierModel::Nonlinear)
    {
        stats->saturation_margin += r.max_amplifier_output > 0.5 * cp.p_sat;
        stats->saturation_overrun += r.max_amplifier_output > cp.p_sat;
    }
    const double p_a = amplifier_power(p_out, cp, SaturationPolicy::Extrapolate);
    r.power = total_power(sol.topology, chains, n_ps, n_var, p_a, cp);

    const auto rate = sum_rate_and_ee(sol.channel, sol.b, s.channel.sigma_n2, r.power.p_total);
    r.sum_rate = rate.sum_rate;
    r.energy_efficiency = rate.energy_efficiency;
    return r;
}

std::vector<TrialRecord> run_trial(const PointModel& point, std::size_t trial, HarnessStats* stats)
{
    const Scenario& s = point.scenario;
    HarnessStats local;

    for (std::size_t attempt = 0;; ++attempt)
    {
        // Redraws use a disjoint realization index so trial k never aliases another trial.
        const std::uint64_t realization = static_cast<std::uint64_t>(trial) | (static_cast<std::uint64_t>(attempt) << 48);
        const CMatrix y = point.sampler->sample(realization);
        try
        {
            std::vector<PrecoderSolution> sols;
            CMatrix h_a;
            if (point.array_map)
                h_a = (*point.array_map)(y);
            for (Topology t : s.topologies)
            {
                OptimizerSettings opt = s.optimizer;
                switch (t)
                {
                case Topology::FullyDigital:
                    sols.push_back(wf_fd(h_a, {s.channel.sigma_n2, s.max_power, point.y_g_array}));
                    break;
                case Topology::Hybrid:
                    opt.seed = mix_seed(s.seed, trial, RandomStream::HybridInit);
                    sols.push_back(wf_hybrid(h_a, PhaseNetwork::partially_connected(point.layout),
                                             {s.channel.sigma_n2, s.max_power, point.y_g_array}, opt));
                    break;
                case Topology::Dma:
                    opt.seed = mix_seed(s.seed, trial, RandomStream::DmaInit);
                    sols.push_back(wf_dma(*point.dma, y, {s.channel.sigma_n2, s.max_power, s.dma.y_g}, opt));
                    break;
                }
            }

            std::vector<TrialRecord> out;
            for (std::size_t v = 0; v <= s.variants.size(); ++v)
            {
                const bool base = v == 0;
                const ConsumptionParams& params = base ? s.consumption : s.variants[v - 1].params;
                const std::string name = base ? std::string() : s.variants[v - 1].name;
                for (const auto& sol : sols)
                    out.push_back({name, evaluate(point, sol, params, trial, base ? &local : nullptr)});
            }
            for (const auto& sol : sols)
                local.not_converged += !sol.converged;
            if (stats)
                *stats += local;
            return out;
        }
        catch (const DegenerateChannel& e)
        {
            if (attempt + 1 >= kMaxRedraws)
                throw DegenerateChannel("trial " + std::to_string(trial) + ": " + std::to_string(kMaxRedraws) +
                                        " degenerate draws in a row (" + e.what() + ")");
            ++local.redraws;
            spdlog::debug("trial {}: degenerate draw redrawn ({})", trial, e.what());
        }
    }
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; !stop && (i = next++) < count;)
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                stop = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::vector<TrialRecord> run_point(const Scenario& s, HarnessStats* stats)
{
    const PointModel point = PointModel::build(s);
    std::vector<std::vector<TrialRecord>> per_trial(s.trials);
    std::vector<HarnessStats> per_stats(s.trials);
    parallel_for(s.trials, s.threads, [&](std::size_t k) { per_trial[k] = run_trial(point, k, &per_stats[k]); });

    std::vector<TrialRecord> out;
    HarnessStats total;
    for (std::size_t k = 0; k < s.trials; ++k)
    {
        total += per_stats[k];
        for (auto& r : per_trial[k])
            out.push_back(std::move(r));
    }
    if (total.redraws)
        spdlog::info("{} degenerate channel draws were redrawn", total.redraws);
    if (total.saturation_margin)
        spdlog::warn("{} amplifier evaluations exceeded P_sat/2 ({} above P_sat, extrapolated)",
                     total.saturation_margin, total.saturation_overrun);
    if (total.not_converged)
        spdlog::warn("{} optimizer runs stopped at the iteration cap", total.not_converged);
    if (stats)
        *stats += total;
    return out;
}

namespace
{

void mean_se(const std::vector<double>& x, double& mean, double& se)
{
    const auto n = static_cast<double>(x.size());
    double sum = 0.0;
    for (double v : x)
        sum += v;
    mean = sum / n;
    if (x.size() < 2)
    {
        se = 0.0;
        return;
    }
    double ss = 0.0;
    for (double v : x)
        ss += (v - mean) * (v - mean);
    se = std::sqrt(ss / (n - 1.0) / n);
}

std::vector<std::string> ordered_labels(const Scenario& s)
{
    std::vector<std::string> labels;
    for (std::size_t v = 0; v <= s.variants.size(); ++v)
        for (Topology t : s.topologies)
            labels.push_back(record_label(t, v == 0 ? std::string() : s.variants[v - 1].name));
    return labels;
}

} // namespace

std::vector<SweepRow> aggregate(double axis_value, const Scenario& s, const std::vector<TrialRecord>& records)
{
    std::vector<SweepRow> rows;
    for (const auto& label : ordered_labels(s))
    {
        std::vector<double> ee, mse;
        double pg = 0.0, pt = 0.0;
        for (const auto& r : records)
        {
            if (record_label(r.record.topology, r.variant) != label)
                continue;
            ee.push_back(r.record.energy_efficiency);
            mse.push_back(r.record.mse);
            pg += r.record.p_g;
            pt += r.record.power.p_total;
        }
        if (ee.empty())
            continue;
        SweepRow row;
        row.axis = axis_value;
        row.label = label;
        row.trials = ee.size();
        mean_se(ee, row.mean_ee, row.se_ee);
        mean_se(mse, row.mean_mse, row.se_mse);
        row.mean_pg = pg / static_cast<double>(ee.size());
        row.mean_ptotal = pt / static_cast<double>(ee.size());
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepRow> SweepResult::series(const std::string& label) const
{
    std::vector<SweepRow> out;
    for (const auto& r : rows)
        if (r.label == label)
            out.push_back(r);
    return out;
}

std::vector<std::string> SweepResult::labels() const
{
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (std::find(out.begin(), out.end(), r.label) == out.end())
            out.push_back(r.label);
    return out;
}

namespace
{

template <class Value, class Configure>
SweepResult run_axis(SweepAxis axis, const Scenario& base, const std::vector<Value>& values, Configure configure)
{
    SweepResult res;
    res.axis = axis;
    for (const Value& v : values)
    {
        Scenario s = base;
        const double axis_value = configure(s, v);
        spdlog::info("sweep {}: point {} ({} trials)", to_string(axis), axis_value, s.trials);
        const auto records = run_point(s, &res.stats);
        res.values.push_back(axis_value);
        for (auto& row : aggregate(axis_value, s, records))
            res.rows.push_back(std::move(row));
    }
    return res;
}

} // namespace

SweepResult sweep_antennas(const Scenario& base, const std::vector<std::size_t>& n_per_tx)
{
    return run_axis(SweepAxis::Antennas, base, n_per_tx, [](Scenario& s, std::size_t n) {
        s.geometry.n_per_tx = n;
        return static_cast<double>(n);
    });
}

SweepResult sweep_power(const Scenario& base, const std::vector<double>& power_dbm)
{
    return run_axis(SweepAxis::Power, base, power_dbm, [](Scenario& s, double dbm) {
        s.max_power = dbm_to_watt(dbm);
        return dbm;
    });
}

SweepResult sweep_spacing(const Scenario& base, const std::vector<std::size_t>& points, double aperture)
{
    return run_axis(SweepAxis::Spacing, base, points, [aperture](Scenario& s, std::size_t n) {
        s.geometry.n_per_tx = n;
        s.geometry.spacing_x = spacing_for_aperture(aperture, n);
        return s.geometry.spacing_x;
    });
}

SweepResult run_sweep(const Scenario& s, SweepAxis axis)
{
    switch (axis)
    {
    case SweepAxis::Antennas:
        if (s.sweep.antennas.empty())
            throw ConfigError("sweep.antennas is empty");
        return sweep_antennas(s, s.sweep.antennas);
    case SweepAxis::Power:
        if (s.sweep.power_dbm.empty())
            throw ConfigError("sweep.power_dBm is empty");
        return sweep_power(s, s.sweep.power_dbm);
    case SweepAxis::Spacing:
        if (s.sweep.spacing_points.empty())
            throw ConfigError("sweep.spacing_points is empty");
        return sweep_spacing(s, s.sweep.spacing_points, s.sweep.aperture);
    case SweepAxis::None:
        break;
    }
    return run_axis(SweepAxis::None, s, std::vector<std::size_t>{s.geometry.n_per_tx}, [](Scenario& sc, std::size_t) {
        return static_cast<double>(sc.geometry.n_per_tx);
    });
}

} // namespace mimo_ee
