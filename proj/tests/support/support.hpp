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

// Random inputs and brute-force reference computations for tests. Nothing
// here calls the library's kernels or scenario code.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "catbox/state.hpp"

namespace catbox::testsupport {

using Rng = std::mt19937_64;

CMatrix ginibre(Rng& rng, std::size_t rows, std::size_t cols);
CMatrix haar_unitary(Rng& rng, std::size_t d);
CVector random_state(Rng& rng, std::size_t d);
CMatrix random_density(Rng& rng, std::size_t d);
CMatrix random_hermitian(Rng& rng, std::size_t d);
std::vector<cplx> random_coefficients(Rng& rng, std::size_t n);

// Index-loop Kronecker product.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Explicit sum over matching digits of the traced factors; `keep` lists
// factor positions in the order the result uses.
CMatrix partial_trace(const CMatrix& rho, const std::vector<std::size_t>& dims,
                      const std::vector<std::size_t>& keep);

// Squared Schmidt coefficients of psi on dA x dB, from an SVD.
std::vector<double> schmidt_weights(const CVector& psi, std::size_t dA, std::size_t dB);

// Truncated Glauber amplitudes from the Poisson closed form, renormalized.
CVector coherent_amplitudes(cplx alpha, std::size_t dim);

// Two-atom cavity chain computed as one amplitude tensor A[atom1][n][atom2]
// with no branching, detections taken at the very end.
struct ChainResult {
  std::array<std::array<double, 2>, 2> joint{};  // [atom1][atom2], 0 = e, 1 = g
  double correlation = 0.0;
  std::array<double, 2> atom1{};
  std::array<double, 2> atom2{};
};
ChainResult paris_chain(cplx alpha, bool with_r2, std::size_t fock_dim);

// Normalized field state after R1, the dispersive step and R2, given
// atom 1 found in `level` (0 = e, 1 = g); `probability` receives P(level).
CVector paris_conditional_field(cplx alpha, std::size_t fock_dim, int level,
                                double* probability);

struct MalformedScript {
  std::string name;
  std::string text;
  int line;              // line the first diagnostic must point at
  std::string fragment;  // expected substring of that diagnostic
};
const std::vector<MalformedScript>& malformed_corpus();

}  // namespace catbox::testsupport
