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
#include <functional>
#include <string_view>
#include <vector>

#include "mimo_ee/types.hpp"

namespace mimo_ee
{

enum class DescentMethod
{
    GradientDescent,
    Lbfgs,
};

DescentMethod descent_method_from_string(std::string_view name);

struct OptimizerSettings
{
    std::size_t max_iterations = 500;
    double gradient_tolerance = 1e-7;  // on the infinity norm
    double sufficient_decrease = 1e-4; // Armijo constant
    double shrink = 0.5;               // backtracking factor
    std::size_t restarts = 1;          // independent random starts, best kept
    std::uint64_t seed = 0;
    DescentMethod method = DescentMethod::Lbfgs;
    std::size_t history = 8;           // L-BFGS memory
    double value_tolerance = 1e-10;    // stop when the relative decrease falls below this

    void validate() const;
};

/// Returns f(x); fills *grad when it is non-null.
using Objective = std::function<double(const RVector& x, RVector* grad)>;

struct OptimizationResult
{
    RVector x;
    double value = 0.0;
    RVector gradient;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> trace; // objective at every accepted iterate, starting with x0
};

/// Unconstrained descent with Armijo backtracking. Every accepted step lowers
/// the objective, so `trace` is non-increasing.
OptimizationResult minimize(const Objective& f, RVector x0, const OptimizerSettings& settings);

} // namespace mimo_ee
