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

#include "catbox/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "catbox/errors.hpp"

namespace catbox::kernels::omp {

namespace {

// Below this many inner-loop flops the thread fan-out costs more than it saves.
constexpr long kParallelWork = 1L << 14;

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  CMatrix out(ar * br, ac * bc);
  const long work = static_cast<long>(out.size());
#pragma omp parallel for collapse(2) schedule(static) if (work > kParallelWork)
  for (Eigen::Index j = 0; j < ac; ++j) {
    for (Eigen::Index i = 0; i < ar; ++i) {
      const cplx aij = a(i, j);
      for (Eigen::Index l = 0; l < bc; ++l) {
        for (Eigen::Index k = 0; k < br; ++k) {
          out(i * br + k, j * bc + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

CMatrix outer(const CVector& psi) {
  const Eigen::Index n = psi.size();
  CMatrix out(n, n);
  const long work = static_cast<long>(n) * n;
#pragma omp parallel for schedule(static) if (work > kParallelWork)
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx cj = std::conj(psi[j]);
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = psi[i] * cj;
  }
  return out;
}

CMatrix partial_trace(const CMatrix& rho, const Layout& layout,
                      std::span<const std::size_t> keep) {
  const auto kept = layout.offsets(keep);
  const auto rest = layout.complement(keep);
  const auto traced = layout.offsets(rest);
  const auto n = static_cast<Eigen::Index>(kept.size());
  const auto m = traced.size();
  CMatrix out(n, n);
  const long work = static_cast<long>(n) * n * static_cast<long>(m);
#pragma omp parallel for collapse(2) schedule(static) if (work > kParallelWork)
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double re = 0.0, im = 0.0;
      for (std::size_t t = 0; t < m; ++t) {
        const cplx v = rho(static_cast<Eigen::Index>(kept[i] + traced[t]),
                           static_cast<Eigen::Index>(kept[j] + traced[t]));
        re += v.real();
        im += v.imag();
      }
      out(i, j) = cplx(re, im);
    }
  }
  return out;
}

CMatrix reduce_pure(const CVector& psi, const Layout& layout,
                    std::span<const std::size_t> keep) {
  const auto kept = layout.offsets(keep);
  const auto rest = layout.complement(keep);
  const auto traced = layout.offsets(rest);
  const auto n = static_cast<Eigen::Index>(kept.size());
  const auto m = traced.size();
  CMatrix out(n, n);
  const long work = static_cast<long>(n) * n * static_cast<long>(m);
#pragma omp parallel for collapse(2) schedule(static) if (work > kParallelWork)
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double re = 0.0, im = 0.0;
      for (std::size_t t = 0; t < m; ++t) {
        const cplx v = psi[static_cast<Eigen::Index>(kept[i] + traced[t])] *
                       std::conj(psi[static_cast<Eigen::Index>(kept[j] + traced[t])]);
        re += v.real();
        im += v.imag();
      }
      out(i, j) = cplx(re, im);
    }
  }
  return out;
}

CMatrix apply_local(const CMatrix& op, const Layout& layout,
                    std::span<const std::size_t> targets,
                    const CMatrix& columns) {
  const auto local = layout.offsets(targets);
  const auto rest = layout.complement(targets);
  const auto base = layout.offsets(rest);
  const auto d = static_cast<Eigen::Index>(local.size());
  if (op.rows() != d || op.cols() != d) {
    throw DimensionError("local operator does not match target dimension");
  }
  const auto nb = static_cast<Eigen::Index>(base.size());
  const Eigen::Index ncols = columns.cols();
  CMatrix out(columns.rows(), ncols);
  const long work = static_cast<long>(ncols) * nb * d * d;
#pragma omp parallel for collapse(2) schedule(static) if (work > kParallelWork)
  for (Eigen::Index c = 0; c < ncols; ++c) {
    for (Eigen::Index r = 0; r < nb; ++r) {
      const std::size_t b = base[static_cast<std::size_t>(r)];
      for (Eigen::Index i = 0; i < d; ++i) {
        double re = 0.0, im = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
          const cplx v =
              op(i, j) * columns(static_cast<Eigen::Index>(b + local[j]), c);
          re += v.real();
          im += v.imag();
        }
        out(static_cast<Eigen::Index>(b + local[i]), c) = cplx(re, im);
      }
    }
  }
  return out;
}

cplx trace_product(const CMatrix& a, const CMatrix& b) {
  double re = 0.0, im = 0.0;
  const Eigen::Index n = a.rows(), m = a.cols();
  const long work = static_cast<long>(n) * m;
#pragma omp parallel for reduction(+ : re, im) schedule(static) if (work > kParallelWork)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const cplx v = a(i, j) * b(j, i);
      re += v.real();
      im += v.imag();
    }
  }
  return {re, im};
}

}  // namespace catbox::kernels::omp
