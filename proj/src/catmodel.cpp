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

#include "catbox/catmodel.hpp"

#include <string>

#include "catbox/errors.hpp"

namespace catbox::cat {

namespace {

struct Amplitudes {
  double stay;   // on |up, alive>
  double decay;  // on |down, dead>
};

Amplitudes decay_amplitudes(const DecayParams& p) {
  p.validate();
  // expm1 keeps 1 - e^{-x} accurate for small lambda t.
  return {std::exp(-0.5 * p.lambda * p.t), std::sqrt(-std::expm1(-p.lambda * p.t))};
}

}  // namespace

void DecayParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("decay rate must be positive, got " + std::to_string(lambda));
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("elapsed time must be >= 0, got " + std::to_string(t));
  }
}

StateVector initial_state() {
  return tensor(basis_state(CatBasis::nucleus(), CatBasis::kUp),
                basis_state(CatBasis::cat(), CatBasis::kAlive));
}

StateVector evolve_decay(const DecayParams& params) {
  const auto a = decay_amplitudes(params);
  const FactorList f = CatBasis::joint();
  const std::size_t stay[] = {CatBasis::kUp, CatBasis::kAlive};
  const std::size_t gone[] = {CatBasis::kDown, CatBasis::kDead};
  CVector amps = CVector::Zero(4);
  amps[static_cast<Eigen::Index>(joint_index(f, stay))] = a.stay;
  amps[static_cast<Eigen::Index>(joint_index(f, gone))] = a.decay;
  StateVector psi(f, std::move(amps));
  if (!psi.is_normalized()) {
    throw NormalizationError("decay amplitudes lost normalization");
  }
  return psi;
}

CMatrix decay_rotation(const DecayParams& params) {
  const auto a = decay_amplitudes(params);
  const FactorList f = CatBasis::joint();
  const std::size_t stay_l[] = {CatBasis::kUp, CatBasis::kAlive};
  const std::size_t gone_l[] = {CatBasis::kDown, CatBasis::kDead};
  const auto stay = static_cast<Eigen::Index>(joint_index(f, stay_l));
  const auto gone = static_cast<Eigen::Index>(joint_index(f, gone_l));
  CMatrix u = CMatrix::Identity(4, 4);
  u(stay, stay) = a.stay;
  u(gone, stay) = a.decay;
  u(stay, gone) = -a.decay;
  u(gone, gone) = a.stay;
  return u;
}

DensityOperator reduced_cat(double t, double lambda) {
  const auto psi = evolve_decay({lambda, t});
  return partial_trace(to_density(psi), {"cat"});
}

CMatrix plus_minus_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix h(2, 2);
  h << r, r, r, -r;
  return h;
}

std::pair<DensityOperator, DensityOperator> rotated_basis_check(double t,
                                                                double lambda) {
  return rotated_basis_check(t, lambda, plus_minus_basis());
}

std::pair<DensityOperator, DensityOperator> rotated_basis_check(
    double t, double lambda, const CMatrix& nucleus_rotation) {
  const auto psi = evolve_decay({lambda, t});

  // With the new basis vectors as columns of B, coordinates are B^dagger psi.
  const CMatrix to_nucleus = nucleus_rotation.adjoint();
  const CMatrix sa = plus_minus_basis();
  const auto rotated = apply_unitary(
      apply_unitary(psi, to_nucleus, {"nucleus"}), sa.adjoint(), {"cat"});
  const auto in_sa = partial_trace(to_density(rotated), {"cat"});
  // Back to {alive, dead}: rho_old = B rho_new B^dagger.
  const auto via_rotation = conjugate(in_sa, sa, {"cat"});

  const auto direct = partial_trace(to_density(psi), {"cat"});
  return {via_rotation, direct};
}

double cat_purity(double t, double lambda) {
  DecayParams{lambda, t}.validate();
  const double alive = std::exp(-lambda * t);
  const double dead = -std::expm1(-lambda * t);
  return alive * alive + dead * dead;
}

ReportRows cat_protocol(const DecayParams& params) {
  const auto rho = reduced_cat(params.t, params.lambda);
  const auto& m = rho.matrix();
  const auto names = CatBasis::cat_levels();
  ReportRow row;
  row.stage = "final";
  row.branch = "root";
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    row.add("pop_" + names[k], m(i, i).real());
  }
  row.add("coherence_0_1", std::abs(m(0, 1)));
  row.add("purity", purity(rho));
  row.matrices.push_back({"rho_cat", m});
  return {row};
}

}  // namespace catbox::cat
