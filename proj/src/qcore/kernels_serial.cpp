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

#include <algorithm>

#include "catbox/errors.hpp"

namespace catbox::kernels {

Layout::Layout(std::vector<std::size_t> dims)
    : dims_(std::move(dims)), strides_(dims_.size(), 1) {
  for (std::size_t k = dims_.size(); k-- > 0;) {
    strides_[k] = total_;
    total_ *= dims_[k];
  }
}

std::vector<std::size_t> Layout::offsets(
    std::span<const std::size_t> positions) const {
  std::size_t count = 1;
  for (auto p : positions) {
    if (p >= dims_.size()) throw DimensionError("factor position out of range");
    count *= dims_[p];
  }
  std::vector<std::size_t> out(count, 0);
  // Mixed-radix counter over the listed digits, last digit fastest.
  std::vector<std::size_t> digit(positions.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) {
      off += digit[k] * strides_[positions[k]];
    }
    out[n] = off;
    for (std::size_t k = positions.size(); k-- > 0;) {
      if (++digit[k] < dims_[positions[k]]) break;
      digit[k] = 0;
    }
  }
  return out;
}

std::vector<std::size_t> Layout::complement(
    std::span<const std::size_t> positions) const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < dims_.size(); ++p) {
    if (std::find(positions.begin(), positions.end(), p) == positions.end()) {
      out.push_back(p);
    }
  }
  return out;
}

namespace serial {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index br = b.rows(), bc = b.cols();
  CMatrix out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (Eigen::Index k = 0; k < br; ++k) {
        for (Eigen::Index l = 0; l < bc; ++l) {
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
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t t : traced) {
        s += rho(static_cast<Eigen::Index>(kept[i] + t),
                 static_cast<Eigen::Index>(kept[j] + t));
      }
      out(i, j) = s;
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
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t t : traced) {
        s += psi[static_cast<Eigen::Index>(kept[i] + t)] *
             std::conj(psi[static_cast<Eigen::Index>(kept[j] + t)]);
      }
      out(i, j) = s;
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
  CMatrix out = CMatrix::Zero(columns.rows(), columns.cols());
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    for (std::size_t b : base) {
      for (Eigen::Index i = 0; i < d; ++i) {
        cplx s = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
          s += op(i, j) * columns(static_cast<Eigen::Index>(b + local[j]), c);
        }
        out(static_cast<Eigen::Index>(b + local[i]), c) = s;
      }
    }
  }
  return out;
}

cplx trace_product(const CMatrix& a, const CMatrix& b) {
  cplx s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  }
  return s;
}

}  // namespace serial

}  // namespace catbox::kernels
