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

#include <string_view>
#include <vector>

#include "catbox/ops.hpp"
#include "catbox/report.hpp"

namespace catbox::measurement {

inline constexpr std::string_view kSystem = "system";
inline constexpr std::string_view kApparatus = "apparatus";

// How the premeasurement map, fixed only on the ready slice |s_k, a_0>,
// is completed to a unitary on the whole system (x) apparatus space.
enum class Completion {
  kCyclic,         // |s_k, a_j> -> |s_k, a_{(j+k+1) mod (n+1)}>
  kTransposition,  // swaps |s_k, a_0> <-> |s_k, a_{k+1}>, identity elsewhere
};

// System levels s_1..s_n with coefficients c_k; apparatus a_0 (ready)
// plus one pointer state per system level.
class PointerChain {
 public:
  // Throws NormalizationError unless sum |c_k|^2 = 1 to 1e-12.
  explicit PointerChain(std::vector<cplx> coefficients);

  const std::vector<cplx>& coefficients() const noexcept { return coefficients_; }
  std::size_t system_dim() const noexcept { return coefficients_.size(); }
  std::size_t apparatus_dim() const noexcept { return coefficients_.size() + 1; }

  SpaceLabel system() const;
  SpaceLabel apparatus() const;

  // (sum_k c_k |s_k>) (x) |a_0>
  StateVector ready_state() const;

 private:
  std::vector<cplx> coefficients_;
};

// Over (system, apparatus), basis index k * (n + 1) + j.
CMatrix premeasurement_unitary(std::size_t system_dim, Completion completion);

// Couples `system` to `apparatus` (dim = system dim + 1) inside any joint state.
StateVector premeasure(const StateVector& psi, std::string_view system,
                       std::string_view apparatus,
                       Completion completion = Completion::kCyclic);

// sum_k c_k |s_k>|a_k>
StateVector premeasurement(const PointerChain& chain,
                           Completion completion = Completion::kCyclic);

// Reduced apparatus operator; diagonal with (rho)_{kk} = |c_k|^2.
DensityOperator apparatus_state(const PointerChain& chain,
                                Completion completion = Completion::kCyclic);

// Level names used by reports and scripts: s1..sn and a0..an.
std::vector<std::string> system_levels(std::size_t n);
std::vector<std::string> apparatus_levels(std::size_t n);

ReportRows vonneumann_protocol(const PointerChain& chain);

}  // namespace catbox::measurement
