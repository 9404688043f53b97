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

#include "catbox/report.hpp"

#include <cmath>
#include <stdexcept>

namespace catbox {

double ReportRow::scalar(std::string_view name) const {
  for (const auto& s : scalars) {
    if (s.name == name) return s.value;
  }
  throw std::out_of_range("row " + stage + "/" + branch + " has no scalar '" +
                          std::string(name) + "'");
}

bool ReportRow::has(std::string_view name) const {
  for (const auto& s : scalars) {
    if (s.name == name) return true;
  }
  return false;
}

std::string branch_id(const BranchPath& path) {
  if (path.empty()) return "root";
  std::string id;
  for (const auto& [factor, level] : path) {
    if (!id.empty()) id += '/';
    id += factor + "=" + level;
  }
  return id;
}

std::vector<std::string> branch_outcomes(const BranchPath& path) {
  std::vector<std::string> out;
  for (const auto& step : path) out.push_back(step.second);
  return out;
}

std::optional<std::string> compare_reports(const ReportRows& a,
                                           const ReportRows& b,
                                           double tolerance) {
  if (a.size() != b.size()) {
    return "row count " + std::to_string(a.size()) + " vs " +
           std::to_string(b.size());
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    const auto& x = a[r];
    const auto& y = b[r];
    const std::string where = "row " + std::to_string(r) + " (" + x.stage +
                              "/" + x.branch + "): ";
    if (x.stage != y.stage || x.branch != y.branch || x.outcomes != y.outcomes) {
      return where + "labels differ from " + y.stage + "/" + y.branch;
    }
    if (!(std::abs(x.probability - y.probability) <= tolerance)) {
      return where + "probability " + std::to_string(x.probability) + " vs " +
             std::to_string(y.probability);
    }
    if (x.scalars.size() != y.scalars.size()) return where + "scalar count differs";
    for (std::size_t s = 0; s < x.scalars.size(); ++s) {
      if (x.scalars[s].name != y.scalars[s].name) {
        return where + "scalar '" + x.scalars[s].name + "' vs '" +
               y.scalars[s].name + "'";
      }
      if (!(std::abs(x.scalars[s].value - y.scalars[s].value) <= tolerance)) {
        return where + x.scalars[s].name + " " +
               std::to_string(x.scalars[s].value) + " vs " +
               std::to_string(y.scalars[s].value);
      }
    }
    if (x.matrices.size() != y.matrices.size()) return where + "matrix count differs";
    for (std::size_t m = 0; m < x.matrices.size(); ++m) {
      const auto& p = x.matrices[m];
      const auto& q = y.matrices[m];
      if (p.name != q.name || p.matrix.rows() != q.matrix.rows() ||
          p.matrix.cols() != q.matrix.cols()) {
        return where + "matrix '" + p.name + "' shape or name differs";
      }
      if (p.matrix.size() > 0 &&
          !((p.matrix - q.matrix).cwiseAbs().maxCoeff() <= tolerance)) {
        return where + "matrix '" + p.name + "' entries differ";
      }
    }
  }
  return std::nullopt;
}

}  // namespace catbox
