// Copyright 2026 The catbox Authors
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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "catbox/report.hpp"
#include "catbox/scenarios.hpp"

namespace catbox::cli {

inline constexpr std::string_view kGenerator = "catbox 1.0.0";
inline constexpr int kFormatVersion = 1;

enum ExitCode : int { kOk = 0, kScenarioError = 1, kUsageError = 2 };

struct RunReport {
  std::string scenario;  // scenario name or script path
  std::string source;    // "native", "script" or "twin"
  scenarios::ParamList parameters;
  ReportRows rows;
};

struct WriteOptions {
  bool dump_matrices = false;
};

// 15 significant digits, lowercase exponent, no negative zero.
std::string format_number(double value);

std::string to_json(const std::vector<RunReport>& runs, const WriteOptions& options);

// Header `scenario,stage,branch,outcomes,probability,quantity,value`, one
// line per scalar and, with dump_matrices, per matrix entry component
// (`rho_field[0;1].re`).
std::string to_csv(const std::vector<RunReport>& runs, const WriteOptions& options);

// `catbox run|list|check ...` without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catbox::cli
