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

#include <filesystem>
#include <string>
#include <vector>

#include "mimo_ee/harness.hpp"

namespace mimo_ee
{

inline constexpr const char* kCsvHeader = "axis,topology,trials,mean_ee,se_ee,mean_mse,se_mse,mean_pg_W,mean_ptotal_W";

/// CSV text with every double printed at round-trip precision.
std::string to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(const std::string& text);

/// Line chart of one metric ("ee" or "mse") versus the sweep axis.
std::string to_svg(const SweepResult& result, const std::string& metric);

/// Writes sweep_<axis>.csv plus ee.svg and mse.svg into `dir` (created if
/// missing). An empty result produces only the CSV header. Returns the paths
/// written. Throws Error on IO failure.
std::vector<std::filesystem::path> emit(const SweepResult& result, const std::filesystem::path& dir);

} // namespace mimo_ee
