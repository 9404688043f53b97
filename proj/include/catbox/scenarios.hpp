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

// Built-in scenarios: a native implementation and an equivalent .qproto
// script for each.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "catbox/catmodel.hpp"
#include "catbox/report.hpp"

namespace catbox::scenarios {

struct Scenario {
  std::string name;
  std::string summary;
};

const std::vector<Scenario>& catalog();
bool is_scenario(std::string_view name);

// Overrides shared by all scenarios; each scenario reads only its own.
struct Parameters {
  cplx alpha = 2.0;
  double t = 3600.0;
  double lambda = cat::kDefaultLambda;
  double g = 1.0;
  double t_prime = 0.7853981633974483;  // g t' = pi/4
  std::optional<std::size_t> fock_dim;
  std::vector<cplx> coeffs;             // empty: uniform over `dim` levels
  std::size_t dim = 3;
  std::optional<bool> with_r2;
  std::optional<bool> with_detection;
  std::optional<bool> with_erasure;
};

using ParamValue = std::variant<double, bool, std::string>;
using ParamList = std::vector<std::pair<std::string, ParamValue>>;

// Parameters as the scenario actually used them, defaults resolved.
// Throws std::invalid_argument for an unknown name.
ParamList resolved_parameters(std::string_view name, const Parameters& p);

ReportRows run_native(std::string_view name, const Parameters& p);

// Script whose interpretation reproduces run_native(name, p).
std::string script_twin(std::string_view name, const Parameters& p);

}  // namespace catbox::scenarios
