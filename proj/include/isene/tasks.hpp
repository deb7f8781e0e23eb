// Copyright 2026 The Isene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "isene/config.hpp"

namespace isene {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  /// Overrides the config's output directory when non-empty.
  std::string out_dir;
  int threads = 1;
  /// Reserved: every task is deterministic.
  std::uint64_t seed = 0;
};

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 2 config error, 3 numeric failure
  std::string out_dir;
  std::vector<std::string> files;  // CSV/JSON files written, in order
  nlohmann::json summary;
  std::string error_kind;
  std::string error_message;
};

/// Runs the configured task, writes its CSV files, manifest.json and, on
/// failure, error.json. Library errors are mapped to exit codes, not thrown.
RunOutcome run_task(const RunConfig& config, const RunOptions& options = {});

/// Formats a double so that it parses back to the same value.
std::string format_double(double x);

}  // namespace isene
