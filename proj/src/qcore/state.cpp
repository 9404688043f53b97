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

#include "catbox/state.hpp"

#include <cmath>
#include <string>

#include "catbox/errors.hpp"

namespace catbox {

StateVector::StateVector(FactorList factors, CVector amplitudes,
                         double norm_tolerance)
    : factors_(std::move(factors)),
      amplitudes_(std::move(amplitudes)),
      norm_tolerance_(norm_tolerance) {
  if (static_cast<std::size_t>(amplitudes_.size()) != total_dim(factors_)) {
    throw DimensionError("state has " + std::to_string(amplitudes_.size()) +
                         " amplitudes but factors " + describe(factors_) +
                         " need " + std::to_string(total_dim(factors_)));
  }
}

bool StateVector::is_normalized() const {
  return std::abs(norm() - 1.0) <= norm_tolerance_;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0 || !std::isfinite(n)) {
    throw NormalizationError("cannot normalize a zero state");
  }
  return StateVector(factors_, amplitudes_ / n, norm_tolerance_);
}

std::size_t joint_index(const FactorList& factors,
                        std::span<const std::size_t> levels) {
  if (levels.size() != factors.size()) {
    throw DimensionError("expected " + std::to_string(factors.size()) +
                         " levels, got " + std::to_string(levels.size()));
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (levels[k] >= factors[k].dim) {
      throw DimensionError("level " + std::to_string(levels[k]) +
                           " out of range for '" + factors[k].name + "'");
    }
    index = index * factors[k].dim + levels[k];
  }
  return index;
}

cplx StateVector::amplitude(std::span<const std::size_t> levels) const {
  return amplitudes_[static_cast<Eigen::Index>(joint_index(factors_, levels))];
}

StateVector basis_state(const FactorList& factors,
                        std::span<const std::size_t> levels) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(total_dim(factors)));
  amps[static_cast<Eigen::Index>(joint_index(factors, levels))] = 1.0;
  return StateVector(factors, std::move(amps));
}

StateVector basis_state(const SpaceLabel& label, std::size_t level) {
  const std::size_t levels[] = {level};
  return basis_state(FactorList{label}, levels);
}

double hermiticity_deviation(const CMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_deviation(const CMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  if (u.size() == 0) return 0.0;
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

DensityDiagnostics diagnose(const CMatrix& rho) {
  DensityDiagnostics d;
  d.hermiticity_deviation = hermiticity_deviation(rho);
  d.trace_deviation = std::abs(rho.trace() - cplx(1.0, 0.0));
  const CMatrix sym = (rho + rho.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  return d;
}

DensityOperator::DensityOperator(FactorList factors, CMatrix matrix)
    : factors_(std::move(factors)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(total_dim(factors_));
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DimensionError("density matrix is " + std::to_string(matrix_.rows()) +
                         "x" + std::to_string(matrix_.cols()) +
                         " but factors " + describe(factors_) + " need side " +
                         std::to_string(n));
  }
  diag_ = diagnose(matrix_);
  if (!diag_.ok()) {
    throw InvalidStateError(
        "not a density operator: hermiticity deviation " +
        std::to_string(diag_.hermiticity_deviation) + ", trace deviation " +
        std::to_string(diag_.trace_deviation) + ", min eigenvalue " +
        std::to_string(diag_.min_eigenvalue));
  }
}

Observable::Observable(FactorList factors, CMatrix matrix)
    : factors_(std::move(factors)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(total_dim(factors_));
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DimensionError("observable matrix does not match factors " +
                         describe(factors_));
  }
  if (hermiticity_deviation(matrix_) >= tol::kHermiticity) {
    throw ObservableError("observable is not Hermitian");
  }
}

}  // namespace catbox
