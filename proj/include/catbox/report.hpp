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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catbox/state.hpp"

namespace catbox {

struct Scalar {
  std::string name;
  double value = 0.0;
};

struct MatrixDump {
  std::string name;
  CMatrix matrix;
};

// One line of a scenario report: a branch of the detection tree at some
// stage, or a summary over all branches.
struct ReportRow {
  std::string stage;
  std::string branch;                 // "root", "summary" or "atom1=g/atom2=e"
  std::vector<std::string> outcomes;  // level names along the branch path
  double probability = 1.0;
  std::vector<Scalar> scalars;        // insertion order is the output order
  std::vector<MatrixDump> matrices;

  void add(std::string name, double value) {
    scalars.push_back({std::move(name), value});
  }
  // Throws std::out_of_range if absent.
  double scalar(std::string_view name) const;
  bool has(std::string_view name) const;
};

using ReportRows = std::vector<ReportRow>;

// (factor, level) pairs in detection order.
using BranchPath = std::vector<std::pair<std::string, std::string>>;

std::string branch_id(const BranchPath& path);
std::vector<std::string> branch_outcomes(const BranchPath& path);

// Describes the first difference between two reports (structure, names,
// or any number beyond `tolerance`); nullopt when they agree.
std::optional<std::string> compare_reports(const ReportRows& a,
                                           const ReportRows& b,
                                           double tolerance);

}  // namespace catbox
