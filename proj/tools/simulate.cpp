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

// simulate --config <file> --sweep {antennas|power|spacing|none} --out <dir>
//          [--trials K] [--seed S] [--pa-model {linear|nonlinear}]
//
// MIMO_EE_LOG_LEVEL (trace, debug, info, warn, error, off) sets verbosity.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/cfg/helpers.h>
#include <spdlog/spdlog.h>

#include "mimo_ee/report.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Monte Carlo energy-efficiency simulator for FD, hybrid and DMA transmitters"};
    std::string config, sweep = "none", out_dir, pa_model;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    app.add_option("--config", config, "scenario file (TOML)")->required()->check(CLI::ExistingFile);
    app.add_option("--sweep", sweep, "sweep axis")
        ->check(CLI::IsMember({"antennas", "power", "spacing", "none"}));
    app.add_option("--out", out_dir, "output directory")->required();
    auto* trials_opt = app.add_option("--trials", trials, "trials per point")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "random seed");
    app.add_option("--pa-model", pa_model, "amplifier model")->check(CLI::IsMember({"linear", "nonlinear"}));
    CLI11_PARSE(app, argc, argv);

    if (const char* level = std::getenv("MIMO_EE_LOG_LEVEL"))
        spdlog::cfg::helpers::load_levels(level);
    spdlog::set_pattern("[%l] %v");

    try
    {
        auto scenario = mimo_ee::load_scenario(config);
        if (*trials_opt)
            scenario.trials = trials;
        if (*seed_opt)
            scenario.seed = seed;
        if (!pa_model.empty())
        {
            const auto model = mimo_ee::amplifier_model_from_string(pa_model);
            scenario.consumption.model = model;
            for (auto& v : scenario.variants)
                v.params.model = model;
        }
        scenario.validate();

        const auto result = mimo_ee::run_sweep(scenario, mimo_ee::sweep_axis_from_string(sweep));
        for (const auto& path : mimo_ee::emit(result, out_dir))
            spdlog::info("wrote {}", path.string());
    }
    catch (const std::exception& e)
    {
        spdlog::error("{}", e.what());
        return EXIT_FAILURE;
    }
    return EXIT_SUCCESS;
}
