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

// Index kernels over row-major tensor-product layouts. `serial` is the
// plain reference; `omp` runs the same loops under OpenMP and is what the
// public operations call. Both must agree to rounding.

#include <cstddef>
#include <span>
#include <vector>

#include "catbox/state.hpp"

namespace catbox::kernels {

class Layout {
 public:
  explicit Layout(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<std::size_t>& strides() const noexcept { return strides_; }
  std::size_t total() const noexcept { return total_; }

  // Joint-index offsets of every basis state of the subsystem formed by
  // `positions` (in that order, first most significant), with all other
  // digits zero.
  std::vector<std::size_t> offsets(std::span<const std::size_t> positions) const;

  // Positions not listed, in ascending order.
  std::vector<std::size_t> complement(std::span<const std::size_t> positions) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

namespace serial {

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix outer(const CVector& psi);
CMatrix partial_trace(const CMatrix& rho, const Layout& layout,
                      std::span<const std::size_t> keep);
CMatrix reduce_pure(const CVector& psi, const Layout& layout,
                    std::span<const std::size_t> keep);
// op acting on `targets` (op basis ordered as `targets`), applied to each
// column of `columns`.
CMatrix apply_local(const CMatrix& op, const Layout& layout,
                    std::span<const std::size_t> targets,
                    const CMatrix& columns);
cplx trace_product(const CMatrix& a, const CMatrix& b);

}  // namespace serial

namespace omp {

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix outer(const CVector& psi);
CMatrix partial_trace(const CMatrix& rho, const Layout& layout,
                      std::span<const std::size_t> keep);
CMatrix reduce_pure(const CVector& psi, const Layout& layout,
                    std::span<const std::size_t> keep);
CMatrix apply_local(const CMatrix& op, const Layout& layout,
                    std::span<const std::size_t> targets,
                    const CMatrix& columns);
cplx trace_product(const CMatrix& a, const CMatrix& b);

}  // namespace omp

}  // namespace catbox::kernels
