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

#include "catbox/measurement.hpp"

#include <cmath>
#include <string>

#include "catbox/errors.hpp"

namespace catbox::measurement {

PointerChain::PointerChain(std::vector<cplx> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) {
    throw DimensionError("pointer chain needs at least one coefficient");
  }
  double total = 0.0;
  for (const auto& c : coefficients_) total += std::norm(c);
  if (!(std::abs(total - 1.0) <= tol::kNorm)) {
    throw NormalizationError("pointer-chain coefficients have sum |c|^2 = " +
                             std::to_string(total));
  }
}

SpaceLabel PointerChain::system() const {
  return {std::string(kSystem), system_dim()};
}

SpaceLabel PointerChain::apparatus() const {
  return {std::string(kApparatus), apparatus_dim()};
}

StateVector PointerChain::ready_state() const {
  CVector amps(static_cast<Eigen::Index>(system_dim()));
  for (std::size_t k = 0; k < system_dim(); ++k) {
    amps[static_cast<Eigen::Index>(k)] = coefficients_[k];
  }
  return tensor(StateVector({system()}, std::move(amps)),
                basis_state(apparatus(), 0));
}

CMatrix premeasurement_unitary(std::size_t n, Completion completion) {
  const std::size_t m = n + 1;
  const auto d = static_cast<Eigen::Index>(n * m);
  CMatrix u = CMatrix::Zero(d, d);
  const auto idx = [m](std::size_t k, std::size_t j) {
    return static_cast<Eigen::Index>(k * m + j);
  };
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t to = j;
      switch (completion) {
        case Completion::kCyclic:
          to = (j + k + 1) % m;
          break;
        case Completion::kTransposition:
          if (j == 0) {
            to = k + 1;
          } else if (j == k + 1) {
            to = 0;
          }
          break;
      }
      u(idx(k, to), idx(k, j)) = 1.0;
    }
  }
  return u;
}

StateVector premeasure(const StateVector& psi, std::string_view system,
                       std::string_view apparatus, Completion completion) {
  const auto& f = psi.factors();
  const std::size_t n = f[position_of(f, system)].dim;
  const std::size_t m = f[position_of(f, apparatus)].dim;
  if (m != n + 1) {
    throw DimensionError("apparatus '" + std::string(apparatus) + "' needs dim " +
                         std::to_string(n + 1) + " (ready + " +
                         std::to_string(n) + " pointers), has " +
                         std::to_string(m));
  }
  return apply_unitary(psi, premeasurement_unitary(n, completion),
                       {std::string(system), std::string(apparatus)});
}

StateVector premeasurement(const PointerChain& chain, Completion completion) {
  return premeasure(chain.ready_state(), kSystem, kApparatus, completion);
}

DensityOperator apparatus_state(const PointerChain& chain, Completion completion) {
  return reduce(premeasurement(chain, completion), {std::string(kApparatus)});
}

std::vector<std::string> system_levels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back("s" + std::to_string(k));
  return out;
}

std::vector<std::string> apparatus_levels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back("a" + std::to_string(k));
  return out;
}

ReportRows vonneumann_protocol(const PointerChain& chain) {
  const auto rho = apparatus_state(chain);
  const auto names = apparatus_levels(chain.system_dim());
  ReportRow row;
  row.stage = "final";
  row.branch = "root";
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    row.add("pop_" + names[k], rho.matrix()(i, i).real());
  }
  row.add("max_offdiag", max_off_diagonal(rho.matrix()));
  row.add("purity", purity(rho));
  row.matrices.push_back({"rho_" + std::string(kApparatus), rho.matrix()});
  return {row};
}

}  // namespace catbox::measurement
