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

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "catbox/space.hpp"
#include "catbox/tolerances.hpp"

namespace catbox {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Pure state over an ordered factor list. Values are immutable; every
// operation returns a new StateVector.
class StateVector {
 public:
  StateVector(FactorList factors, CVector amplitudes,
              double norm_tolerance = tol::kNorm);

  const FactorList& factors() const noexcept { return factors_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  double norm_tolerance() const noexcept { return norm_tolerance_; }

  double norm() const { return amplitudes_.norm(); }
  bool is_normalized() const;

  // Throws NormalizationError for a zero vector.
  StateVector normalized() const;

  // Amplitude of the product basis state with one level per factor.
  cplx amplitude(std::span<const std::size_t> levels) const;

 private:
  FactorList factors_;
  CVector amplitudes_;
  double norm_tolerance_;
};

StateVector basis_state(const FactorList& factors,
                        std::span<const std::size_t> levels);
StateVector basis_state(const SpaceLabel& label, std::size_t level);

// Joint index of a product basis state, first factor most significant.
std::size_t joint_index(const FactorList& factors,
                        std::span<const std::size_t> levels);

struct DensityDiagnostics {
  double hermiticity_deviation = 0.0;  // max |rho - rho^dagger|
  double trace_deviation = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;         // of (rho + rho^dagger) / 2

  bool ok() const noexcept {
    return hermiticity_deviation < tol::kHermiticity &&
           trace_deviation <= tol::kTrace &&
           min_eigenvalue >= tol::kEigenvalueFloor;
  }
};

DensityDiagnostics diagnose(const CMatrix& rho);

// Hermitian, unit-trace, positive semidefinite operator. The constructor
// enforces all three and throws InvalidStateError otherwise.
class DensityOperator {
 public:
  DensityOperator(FactorList factors, CMatrix matrix);

  const FactorList& factors() const noexcept { return factors_; }
  const CMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(matrix_.rows());
  }
  const DensityDiagnostics& diagnostics() const noexcept { return diag_; }

 private:
  FactorList factors_;
  CMatrix matrix_;
  DensityDiagnostics diag_;
};

class Observable {
 public:
  // Throws ObservableError if the matrix is not Hermitian to 1e-10.
  Observable(FactorList factors, CMatrix matrix);

  const FactorList& factors() const noexcept { return factors_; }
  const CMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(matrix_.rows());
  }

 private:
  FactorList factors_;
  CMatrix matrix_;
};

double hermiticity_deviation(const CMatrix& m);
double unitarity_deviation(const CMatrix& u);

}  // namespace catbox
