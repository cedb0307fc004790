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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mimo_ee/admittance.hpp"
#include "mimo_ee/channel.hpp"
#include "mimo_ee/power.hpp"
#include "mimo_ee/precoding.hpp"
#include "mimo_ee/scenario.hpp"
#include "mimo_ee/topology.hpp"

namespace mimo_ee
{

/// Everything about one sweep point that does not depend on the trial.
struct PointModel
{
    Scenario scenario;
    PhysicalConstants consts{};
    ArrayLayout layout;
    CMatrix y_aa;
    double y_g_array = 0.0;
    std::shared_ptr<const ChannelSampler> sampler;
    std::shared_ptr<const ArrayChannelMap> array_map; // null without array topologies
    std::shared_ptr<const DmaNetwork> dma;            // null without the DMA

    static PointModel build(const Scenario& s);
    std::size_t antennas() const { return layout.size(); }
};

/// Counters reported alongside the records.
struct HarnessStats
{
    std::size_t redraws = 0;             // degenerate channel draws replaced
    std::size_t saturation_margin = 0;   // amplifier above P_sat/2
    std::size_t saturation_overrun = 0;  // amplifier above P_sat (formula extrapolated)
    std::size_t not_converged = 0;       // optimizer hit its iteration cap

    HarnessStats& operator+=(const HarnessStats& o);
};

/// One record per consumption variant per topology. `variant` is empty for
/// the base consumption model.
struct TrialRecord
{
    std::string variant;
    EvaluationRecord record;
};

inline constexpr std::size_t kMaxRedraws = 10;

/// Runs one trial of every topology on a shared channel draw.
std::vector<TrialRecord> run_trial(const PointModel& point, std::size_t trial, HarnessStats* stats = nullptr);

/// All trials of one point, ordered by (trial, variant, topology).
std::vector<TrialRecord> run_point(const Scenario& s, HarnessStats* stats = nullptr);

/// Evaluates power and rate of a solved precoder under one consumption model.
EvaluationRecord evaluate(const PointModel& point, const PrecoderSolution& sol, const ConsumptionParams& params,
                          std::size_t trial, HarnessStats* stats = nullptr);

/// Runs fn(0..count-1) on up to `threads` workers (0: hardware concurrency).
/// The first exception is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

struct SweepRow
{
    double axis = 0.0;
    std::string label; // topology, or topology@variant
    std::size_t trials = 0;
    double mean_ee = 0.0;
    double se_ee = 0.0;
    double mean_mse = 0.0;
    double se_mse = 0.0;
    double mean_pg = 0.0;
    double mean_ptotal = 0.0;
};

struct SweepResult
{
    SweepAxis axis = SweepAxis::None;
    std::vector<double> values;
    std::vector<SweepRow> rows; // in sweep order, then by label
    HarnessStats stats;

    /// Rows of one label in axis order.
    std::vector<SweepRow> series(const std::string& label) const;
    std::vector<std::string> labels() const;
};

std::string record_label(Topology t, const std::string& variant);

/// Mean and standard error per label of one point's records.
std::vector<SweepRow> aggregate(double axis_value, const Scenario& s, const std::vector<TrialRecord>& records);

SweepResult sweep_antennas(const Scenario& base, const std::vector<std::size_t>& n_per_tx);
SweepResult sweep_power(const Scenario& base, const std::vector<double>& power_dbm);
/// Spacing = aperture / (points - 1); the axis value is the spacing in wavelengths.
SweepResult sweep_spacing(const Scenario& base, const std::vector<std::size_t>& points, double aperture);
/// Dispatches on `axis` with the value lists from the scenario's [sweep] table.
SweepResult run_sweep(const Scenario& s, SweepAxis axis);

} // namespace mimo_ee
