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

#include <limits>

#include "mimo_ee/optimizer.hpp"

using namespace mimo_ee;

namespace
{

double rosenbrock(const RVector& x, RVector* g)
{
    const double a = 1.0 - x(0), b = x(1) - x(0) * x(0);
    if (g)
    {
        g->resize(2);
        (*g)(0) = -2.0 * a - 400.0 * x(0) * b;
        (*g)(1) = 200.0 * b;
    }
    return a * a + 100.0 * b * b;
}

} // namespace

TEST_CASE("L-BFGS solves the Rosenbrock valley")
{
    OptimizerSettings s;
    s.max_iterations = 2000;
    s.value_tolerance = 0.0;
    const auto r = minimize(rosenbrock, RVector::Map(std::array<double, 2>{-1.2, 1.0}.data(), 2), s);
    CHECK(r.converged);
    CHECK(r.x(0) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r.x(1) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("gradient descent on a convex quadratic")
{
    RMatrix a(3, 3);
    a << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 2;
    const RVector b = RVector::LinSpaced(3, 1.0, 3.0);
    Objective f = [&](const RVector& x, RVector* g) {
        if (g)
            *g = a * x - b;
        return 0.5 * x.dot(a * x) - b.dot(x);
    };
    OptimizerSettings s;
    s.method = DescentMethod::GradientDescent;
    s.max_iterations = 5000;
    s.value_tolerance = 0.0;
    const auto r = minimize(f, RVector::Zero(3), s);
    CHECK((r.x - a.ldlt().solve(b)).norm() <= 1e-6);
}

TEST_CASE("accepted iterates never increase the objective")
{
    for (auto m : {DescentMethod::GradientDescent, DescentMethod::Lbfgs})
    {
        OptimizerSettings s;
        s.method = m;
        s.max_iterations = 300;
        const auto r = minimize(rosenbrock, RVector::Map(std::array<double, 2>{-1.5, 2.0}.data(), 2), s);
        REQUIRE(r.trace.size() == r.iterations + 1);
        for (std::size_t i = 1; i < r.trace.size(); ++i)
            CHECK(r.trace[i] <= r.trace[i - 1]);
        CHECK(r.value == r.trace.back());
    }
}

TEST_CASE("non-finite trial points are rejected by the line search")
{
    // barrier at x = 2: the first unit step overshoots into +inf
    Objective f = [](const RVector& x, RVector* g) {
        if (x(0) >= 2.0)
            return std::numeric_limits<double>::infinity();
        if (g)
            *g = RVector::Constant(1, 2.0 * (x(0) - 1.9));
        return (x(0) - 1.9) * (x(0) - 1.9);
    };
    const auto r = minimize(f, RVector::Constant(1, -5.0), {});
    CHECK(r.x(0) == doctest::Approx(1.9).epsilon(1e-6));
}

TEST_CASE("iteration cap is reported as non-convergence")
{
    OptimizerSettings s;
    s.max_iterations = 3;
    const auto r = minimize(rosenbrock, RVector::Map(std::array<double, 2>{-1.2, 1.0}.data(), 2), s);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 3);
}

TEST_CASE("settings validation and method names")
{
    OptimizerSettings s;
    s.shrink = 1.0;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = {};
    s.sufficient_decrease = 0.0;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    s = {};
    s.restarts = 0;
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
    CHECK(descent_method_from_string("lbfgs") == DescentMethod::Lbfgs);
    CHECK(descent_method_from_string("gradient-descent") == DescentMethod::GradientDescent);
    CHECK_THROWS_AS(descent_method_from_string("newton"), InvalidArgument);
}
