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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "catbox/state.hpp"

namespace catbox {

// Kronecker composition. Factor label sets must be disjoint (LabelError).
StateVector tensor(const StateVector& a, const StateVector& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
Observable tensor(const Observable& a, const Observable& b);

// |psi><psi|. Throws NormalizationError if psi is off unit norm.
DensityOperator to_density(const StateVector& psi);

// Reduction onto `keep`; kept factors stay in their original relative order.
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep);

// Same reduction computed straight from the amplitudes, without forming
// the joint density matrix.
DensityOperator reduce(const StateVector& psi,
                       const std::vector<std::string>& keep);

// O_A (x) 1 on `full`, respecting the factor order of `full`.
Observable lift(const Observable& obs, const FactorList& full);

// Tr(rho O). Observables on a subset of rho's factors are lifted first.
double expectation(const DensityOperator& rho, const Observable& obs);

// u acts on `targets`, its basis ordered as `targets` are listed.
// Throws UnitarityError if u is not unitary to 1e-10.
StateVector apply_unitary(const StateVector& psi, const CMatrix& u,
                          const std::vector<std::string>& targets);

// Arbitrary linear map on `targets`; no unitarity check, no renormalization.
StateVector apply_operator(const StateVector& psi, const CMatrix& op,
                           const std::vector<std::string>& targets);

// u rho u^dagger with u on `targets`.
DensityOperator conjugate(const DensityOperator& rho, const CMatrix& u,
                          const std::vector<std::string>& targets);

// <bra| rho |ket>
cplx coherence(const DensityOperator& rho, const StateVector& bra,
               const StateVector& ket);

double purity(const DensityOperator& rho);

cplx inner(const StateVector& bra, const StateVector& ket);

// <psi| rho |psi> for normalized psi.
double fidelity(const DensityOperator& rho, const StateVector& psi);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Ascending eigenvalues of (rho + rho^dagger) / 2.
Eigen::VectorXd eigenvalues(const DensityOperator& rho);

// Unnormalized projection of `factor` onto `level`.
StateVector project(const StateVector& psi, std::string_view factor,
                    std::size_t level);

double population(const StateVector& psi, std::string_view factor,
                  std::size_t level);

// Largest |rho_ij| with i != j.
double max_off_diagonal(const CMatrix& m);

}  // namespace catbox
