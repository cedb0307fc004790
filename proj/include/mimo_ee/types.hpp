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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace mimo_ee
{

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

enum class Topology
{
    FullyDigital,
    Hybrid,
    Dma
};

std::string_view to_string(Topology t);
Topology topology_from_string(std::string_view name);

// Error hierarchy. Every failure the library reports derives from Error.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error
{
  public:
    using Error::Error;
};

class InvalidGeometry : public Error
{
  public:
    using Error::Error;
};

class InvalidCovariance : public Error
{
  public:
    using Error::Error;
};

class DegenerateChannel : public Error
{
  public:
    using Error::Error;
};

class SaturationViolation : public Error
{
  public:
    using Error::Error;
};

class ConfigError : public Error
{
  public:
    using Error::Error;
};

/// Raised when a linear system cannot be solved reliably. `factor` names the
/// matrix that failed, `rcond` is the reciprocal condition estimate.
class SingularMatrix : public Error
{
  public:
    SingularMatrix(std::string factor, double rcond);

    const std::string& factor() const noexcept { return factor_; }
    double rcond() const noexcept { return rcond_; }

  private:
    std::string factor_;
    double rcond_;
};

} // namespace mimo_ee
