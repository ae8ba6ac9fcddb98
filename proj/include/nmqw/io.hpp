// Copyright 2026 The nmqw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "nmqw/blp.hpp"
#include "nmqw/qwalk.hpp"
#include "nmqw/tomography.hpp"

// Versioned JSON documents (format_version 1) for datasets, walk configs and
// quantification results. Complex entries are [re, im] pairs of decimal
// floats, matrices dense row-major, labels 1-based; floats round-trip
// bit-exactly (shortest-round-trip rendering on write, exact parse on read).
// Dataset metadata must carry a "time_unit" of "step" or "second".

namespace nmqw {

inline constexpr int kFormatVersion = 1;

struct ReadOptions {
  Tolerances tolerances;
};

/// Parse and validate a dataset document. Malformed text raises a parse
/// error with the byte position; invariant violations raise a validation
/// error naming the series, time index and bound.
DynamicsDataset read_dataset(const std::string& text, const ReadOptions& opts = {});
std::string write_dataset(const DynamicsDataset& dataset);

QWConfig read_config(const std::string& text);
std::string write_config(const QWConfig& config);

BLPResult read_result(const std::string& text);
/// The result document echoes the optimizer diagnostics (seed included) so a
/// run can be reproduced from its output alone.
std::string write_result(const BLPResult& result);

/// Plain two-column time/distance table for plotting.
std::string write_trajectory_table(const DistanceTrajectory& trajectory);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nmqw
