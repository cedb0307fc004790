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

#include "mimo_ee/optimizer.hpp"

#include <cmath>
#include <deque>
#include <string>

namespace mimo_ee
{

DescentMethod descent_method_from_string(std::string_view name)
{
    if (name == "lbfgs")
        return DescentMethod::Lbfgs;
    if (name == "gd" || name == "gradient-descent")
        return DescentMethod::GradientDescent;
    throw InvalidArgument("unknown optimizer method '" + std::string(name) + "'");
}

void OptimizerSettings::validate() const
{
    if (max_iterations == 0 || restarts == 0 || history == 0)
        throw InvalidArgument("optimizer counts must be positive");
    if (!(gradient_tolerance > 0.0) || !(sufficient_decrease > 0.0 && sufficient_decrease < 1.0))
        throw InvalidArgument("optimizer tolerances must be positive and the Armijo constant below 1");
    if (!(shrink > 0.0 && shrink < 1.0))
        throw InvalidArgument("backtracking shrink factor must lie in (0, 1)");
    if (value_tolerance < 0.0)
        throw InvalidArgument("value tolerance must be non-negative");
}

namespace
{

constexpr int kMaxBacktracks = 60;

struct Pair
{
    RVector s;
    RVector y;
    double rho;
};

// Two-loop recursion: returns -H g for the implicit inverse Hessian H.
RVector lbfgs_direction(const RVector& g, const std::deque<Pair>& memory)
{
    RVector q = g;
    std::vector<double> alpha(memory.size());
    for (std::size_t i = memory.size(); i-- > 0;)
    {
        alpha[i] = memory[i].rho * memory[i].s.dot(q);
        q -= alpha[i] * memory[i].y;
    }
    if (!memory.empty())
    {
        const auto& last = memory.back();
        q *= last.s.dot(last.y) / last.y.squaredNorm();
    }
    for (std::size_t i = 0; i < memory.size(); ++i)
    {
        const double beta = memory[i].rho * memory[i].y.dot(q);
        q += (alpha[i] - beta) * memory[i].s;
    }
    return -q;
}

} // namespace

OptimizationResult minimize(const Objective& f, RVector x0, const OptimizerSettings& settings)
{
    settings.validate();

    OptimizationResult res;
    res.x = std::move(x0);
    res.gradient.resize(res.x.size());
    res.value = f(res.x, &res.gradient);
    if (!std::isfinite(res.value) || !res.gradient.allFinite())
        throw InvalidArgument("objective is not finite at the starting point");
    res.trace.push_back(res.value);

    std::deque<Pair> memory;
    double gd_step = 0.0;
    RVector trial_grad(res.x.size());

    for (res.iterations = 0; res.iterations < settings.max_iterations;)
    {
        const double gnorm = res.gradient.lpNorm<Eigen::Infinity>();
        if (gnorm <= settings.gradient_tolerance)
        {
            res.converged = true;
            break;
        }

        RVector dir;
        double step;
        if (settings.method == DescentMethod::Lbfgs && !memory.empty())
        {
            dir = lbfgs_direction(res.gradient, memory);
            step = 1.0;
            if (!(dir.dot(res.gradient) < 0.0))
            {
                memory.clear();
                dir = -res.gradient;
                step = 1.0 / gnorm;
            }
        }
        else
        {
            dir = -res.gradient;
            step = gd_step > 0.0 ? 2.0 * gd_step : 1.0 / gnorm;
        }

        const double slope = dir.dot(res.gradient);
        RVector trial;
        double value = 0.0;
        bool accepted = false;
        for (int k = 0; k < kMaxBacktracks; ++k, step *= settings.shrink)
        {
            trial = res.x + step * dir;
            value = f(trial, &trial_grad);
            if (std::isfinite(value) && value <= res.value + settings.sufficient_decrease * step * slope)
            {
                accepted = true;
                break;
            }
        }
        if (!accepted)
        {
            // No decrease representable along the direction: treat as stationary.
            res.converged = gnorm <= 1e3 * settings.gradient_tolerance;
            break;
        }

        ++res.iterations;
        gd_step = step;
        const double previous = res.value;
        if (settings.method == DescentMethod::Lbfgs)
        {
            Pair p{trial - res.x, trial_grad - res.gradient, 0.0};
            const double sy = p.s.dot(p.y);
            if (sy > 1e-12 * p.s.norm() * p.y.norm())
            {
                p.rho = 1.0 / sy;
                memory.push_back(std::move(p));
                if (memory.size() > settings.history)
                    memory.pop_front();
            }
        }
        res.x = std::move(trial);
        res.value = value;
        res.gradient = trial_grad;
        res.trace.push_back(value);

        if (previous - value <= settings.value_tolerance * std::max(1.0, std::abs(value)))
        {
            res.converged = true;
            break;
        }
    }
    return res;
}

} // namespace mimo_ee
