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

#include "catbox/ops.hpp"

#include <algorithm>
#include <cmath>

#include "catbox/errors.hpp"
#include "catbox/kernels.hpp"

namespace catbox {

namespace {

FactorList concat_disjoint(const FactorList& a, const FactorList& b) {
  for (const auto& f : b) {
    if (contains(a, f.name)) {
      throw LabelError("label collision on '" + f.name + "'");
    }
  }
  FactorList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Positions of `keep` sorted ascending so the reduced operator keeps the
// original relative factor order.
std::vector<std::size_t> kept_positions(const FactorList& factors,
                                        const std::vector<std::string>& keep) {
  if (keep.empty()) throw LabelError("partial trace needs at least one kept factor");
  auto pos = positions_of(factors, keep);
  std::sort(pos.begin(), pos.end());
  return pos;
}

FactorList select(const FactorList& factors, std::span<const std::size_t> pos) {
  FactorList out;
  for (auto p : pos) out.push_back(factors[p]);
  return out;
}

CMatrix hermitize(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace

StateVector tensor(const StateVector& a, const StateVector& b) {
  auto factors = concat_disjoint(a.factors(), b.factors());
  CVector amps = kernels::omp::kron(a.amplitudes(), b.amplitudes());
  return StateVector(std::move(factors), std::move(amps),
                     std::max(a.norm_tolerance(), b.norm_tolerance()));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  auto factors = concat_disjoint(a.factors(), b.factors());
  return DensityOperator(std::move(factors),
                         kernels::omp::kron(a.matrix(), b.matrix()));
}

Observable tensor(const Observable& a, const Observable& b) {
  auto factors = concat_disjoint(a.factors(), b.factors());
  return Observable(std::move(factors),
                    kernels::omp::kron(a.matrix(), b.matrix()));
}

DensityOperator to_density(const StateVector& psi) {
  if (!psi.is_normalized()) {
    throw NormalizationError("state norm " + std::to_string(psi.norm()) +
                             " is not 1");
  }
  return DensityOperator(psi.factors(), kernels::omp::outer(psi.amplitudes()));
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep) {
  const auto pos = kept_positions(rho.factors(), keep);
  const kernels::Layout layout(dims_of(rho.factors()));
  return DensityOperator(select(rho.factors(), pos),
                         kernels::omp::partial_trace(rho.matrix(), layout, pos));
}

DensityOperator reduce(const StateVector& psi,
                       const std::vector<std::string>& keep) {
  if (!psi.is_normalized()) {
    throw NormalizationError("state norm " + std::to_string(psi.norm()) +
                             " is not 1");
  }
  const auto pos = kept_positions(psi.factors(), keep);
  const kernels::Layout layout(dims_of(psi.factors()));
  return DensityOperator(select(psi.factors(), pos),
                         kernels::omp::reduce_pure(psi.amplitudes(), layout, pos));
}

Observable lift(const Observable& obs, const FactorList& full) {
  std::vector<std::string> names;
  for (const auto& f : obs.factors()) {
    const auto p = position_of(full, f.name);
    if (full[p].dim != f.dim) {
      throw DimensionError("factor '" + f.name + "' has mismatched dimension");
    }
    names.push_back(f.name);
  }
  const auto targets = positions_of(full, names);
  const kernels::Layout layout(dims_of(full));
  const auto n = static_cast<Eigen::Index>(layout.total());
  CMatrix m = kernels::omp::apply_local(obs.matrix(), layout, targets,
                                        CMatrix::Identity(n, n));
  return Observable(full, std::move(m));
}

double expectation(const DensityOperator& rho, const Observable& obs) {
  const Observable full =
      obs.factors() == rho.factors() ? obs : lift(obs, rho.factors());
  const cplx v = kernels::omp::trace_product(rho.matrix(), full.matrix());
  if (std::abs(v.imag()) >= tol::kHermiticity) {
    throw ObservableError("expectation value has imaginary part " +
                          std::to_string(v.imag()));
  }
  return v.real();
}

StateVector apply_operator(const StateVector& psi, const CMatrix& op,
                           const std::vector<std::string>& targets) {
  const auto pos = positions_of(psi.factors(), targets);
  const kernels::Layout layout(dims_of(psi.factors()));
  CVector out = kernels::omp::apply_local(op, layout, pos, psi.amplitudes());
  return StateVector(psi.factors(), std::move(out), psi.norm_tolerance());
}

StateVector apply_unitary(const StateVector& psi, const CMatrix& u,
                          const std::vector<std::string>& targets) {
  const double dev = unitarity_deviation(u);
  if (!(dev < tol::kUnitarity)) {
    throw UnitarityError("matrix is not unitary (deviation " +
                         std::to_string(dev) + ")");
  }
  return apply_operator(psi, u, targets);
}

DensityOperator conjugate(const DensityOperator& rho, const CMatrix& u,
                          const std::vector<std::string>& targets) {
  const double dev = unitarity_deviation(u);
  if (!(dev < tol::kUnitarity)) {
    throw UnitarityError("matrix is not unitary (deviation " +
                         std::to_string(dev) + ")");
  }
  const auto pos = positions_of(rho.factors(), targets);
  const kernels::Layout layout(dims_of(rho.factors()));
  // u (u rho)^dagger = u rho u^dagger for Hermitian rho.
  const CMatrix left = kernels::omp::apply_local(u, layout, pos, rho.matrix());
  const CMatrix both = kernels::omp::apply_local(u, layout, pos, left.adjoint());
  return DensityOperator(rho.factors(), hermitize(both));
}

cplx coherence(const DensityOperator& rho, const StateVector& bra,
               const StateVector& ket) {
  if (bra.factors() != rho.factors() || ket.factors() != rho.factors()) {
    throw DimensionError("bra/ket factors " + describe(bra.factors()) + ", " +
                         describe(ket.factors()) + " do not match " +
                         describe(rho.factors()));
  }
  return bra.amplitudes().dot(rho.matrix() * ket.amplitudes());
}

double purity(const DensityOperator& rho) {
  return kernels::omp::trace_product(rho.matrix(), rho.matrix()).real();
}

cplx inner(const StateVector& bra, const StateVector& ket) {
  if (bra.factors() != ket.factors()) {
    throw DimensionError("inner product over different factors " +
                         describe(bra.factors()) + " and " +
                         describe(ket.factors()));
  }
  // Eigen's dot conjugates the left operand.
  return bra.amplitudes().dot(ket.amplitudes());
}

double fidelity(const DensityOperator& rho, const StateVector& psi) {
  return coherence(rho, psi, psi).real();
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b));
}

Eigen::VectorXd eigenvalues(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(rho.matrix()),
                                                Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

StateVector project(const StateVector& psi, std::string_view factor,
                    std::size_t level) {
  const auto p = position_of(psi.factors(), factor);
  const std::size_t d = psi.factors()[p].dim;
  if (level >= d) {
    throw DimensionError("level " + std::to_string(level) +
                         " out of range for '" + std::string(factor) + "'");
  }
  CMatrix proj = CMatrix::Zero(static_cast<Eigen::Index>(d),
                               static_cast<Eigen::Index>(d));
  proj(static_cast<Eigen::Index>(level), static_cast<Eigen::Index>(level)) = 1.0;
  return apply_operator(psi, proj, {std::string(factor)});
}

double population(const StateVector& psi, std::string_view factor,
                  std::size_t level) {
  return project(psi, factor, level).amplitudes().squaredNorm();
}

double max_off_diagonal(const CMatrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j) best = std::max(best, std::abs(m(i, j)));
    }
  }
  return best;
}

}  // namespace catbox
