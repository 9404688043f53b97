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

#include "support.hpp"

#include <cmath>

namespace catbox::testsupport {

CMatrix ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = cplx(n(rng), n(rng));
  }
  return g;
}

CMatrix haar_unitary(Rng& rng, std::size_t d) {
  const CMatrix g = ginibre(rng, d, d);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const cplx rk = r(k, k);
    q.col(k) *= std::abs(rk) > 0 ? rk / std::abs(rk) : cplx(1.0);
  }
  return q;
}

CVector random_state(Rng& rng, std::size_t d) {
  CVector v = ginibre(rng, d, 1).col(0);
  return v / v.norm();
}

CMatrix random_density(Rng& rng, std::size_t d) {
  const CMatrix g = ginibre(rng, d, d);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return (rho + rho.adjoint()) / 2.0;
}

CMatrix random_hermitian(Rng& rng, std::size_t d) {
  const CMatrix g = ginibre(rng, d, d);
  return (g + g.adjoint()) / 2.0;
}

std::vector<cplx> random_coefficients(Rng& rng, std::size_t n) {
  const CVector v = random_state(rng, n);
  return {v.data(), v.data() + v.size()};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

namespace {

std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t p = dims.size(); p-- > 0;) {
    d[p] = index % dims[p];
    index /= dims[p];
  }
  return d;
}

}  // namespace

CMatrix partial_trace(const CMatrix& rho, const std::vector<std::size_t>& dims,
                      const std::vector<std::size_t>& keep) {
  std::size_t kept_dim = 1;
  for (auto p : keep) kept_dim *= dims[p];
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kept_dim),
                              static_cast<Eigen::Index>(kept_dim));
  const auto is_kept = [&](std::size_t p) {
    for (auto k : keep) if (k == p) return true;
    return false;
  };
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const auto di = digits(static_cast<std::size_t>(i), dims);
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      const auto dj = digits(static_cast<std::size_t>(j), dims);
      bool match = true;
      for (std::size_t p = 0; p < dims.size(); ++p) {
        if (!is_kept(p) && di[p] != dj[p]) match = false;
      }
      if (!match) continue;
      std::size_t ri = 0, rj = 0;
      for (auto p : keep) {
        ri = ri * dims[p] + di[p];
        rj = rj * dims[p] + dj[p];
      }
      out(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(rj)) += rho(i, j);
    }
  }
  return out;
}

std::vector<double> schmidt_weights(const CVector& psi, std::size_t dA, std::size_t dB) {
  CMatrix m(static_cast<Eigen::Index>(dA), static_cast<Eigen::Index>(dB));
  for (std::size_t a = 0; a < dA; ++a)
    for (std::size_t b = 0; b < dB; ++b)
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          psi[static_cast<Eigen::Index>(a * dB + b)];
  Eigen::JacobiSVD<CMatrix> svd(m);
  std::vector<double> w;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    w.push_back(svd.singularValues()[k] * svd.singularValues()[k]);
  }
  return w;
}

CVector coherent_amplitudes(cplx alpha, std::size_t dim) {
  CVector v(static_cast<Eigen::Index>(dim));
  const double r = std::abs(alpha);
  const double phase = std::arg(alpha);
  for (std::size_t n = 0; n < dim; ++n) {
    const double nd = static_cast<double>(n);
    const double mag = r == 0.0 ? (n == 0 ? 1.0 : 0.0)
                                : std::exp(-0.5 * r * r + nd * std::log(r) -
                                           0.5 * std::lgamma(nd + 1.0));
    v[static_cast<Eigen::Index>(n)] = std::polar(mag, nd * phase);
  }
  return v / v.norm();
}

namespace {

// A[a1][n][a2] flattened; a = 0 is e, a = 1 is g.
struct Tensor {
  std::size_t dim;
  std::vector<cplx> a;
  cplx& at(int a1, std::size_t n, int a2) { return a[(a1 * dim + n) * 2 + a2]; }
};

// e -> (e + g)/sqrt2, g -> (g - e)/sqrt2 on the amplitudes of one atom.
void ramsey(Tensor& t, bool first) {
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t n = 0; n < t.dim; ++n) {
    for (int other = 0; other < 2; ++other) {
      cplx& e = first ? t.at(0, n, other) : t.at(other, n, 0);
      cplx& g = first ? t.at(1, n, other) : t.at(other, n, 1);
      const cplx ne = r * (e - g);
      const cplx ng = r * (e + g);
      e = ne;
      g = ng;
    }
  }
}

// Field picks up (-1)^n when the atom is in g.
void parity_kick(Tensor& t, bool first) {
  for (std::size_t n = 1; n < t.dim; n += 2) {
    for (int other = 0; other < 2; ++other) {
      (first ? t.at(1, n, other) : t.at(other, n, 1)) *= -1.0;
    }
  }
}

Tensor prepared(cplx alpha, std::size_t dim, bool with_r2) {
  Tensor t{dim, std::vector<cplx>(4 * dim, 0.0)};
  const CVector c = coherent_amplitudes(alpha, dim);
  for (std::size_t n = 0; n < dim; ++n) t.at(0, n, 0) = c[static_cast<Eigen::Index>(n)];
  ramsey(t, true);
  parity_kick(t, true);
  if (with_r2) ramsey(t, true);
  return t;
}

}  // namespace

ChainResult paris_chain(cplx alpha, bool with_r2, std::size_t fock_dim) {
  Tensor t = prepared(alpha, fock_dim, with_r2);
  ramsey(t, false);
  parity_kick(t, false);
  ramsey(t, false);
  ChainResult r;
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (std::size_t n = 0; n < fock_dim; ++n) r.joint[a1][a2] += std::norm(t.at(a1, n, a2));
  for (int a1 = 0; a1 < 2; ++a1) {
    for (int a2 = 0; a2 < 2; ++a2) {
      r.correlation += (a1 == a2 ? 1.0 : -1.0) * r.joint[a1][a2];
      r.atom1[a1] += r.joint[a1][a2];
      r.atom2[a2] += r.joint[a1][a2];
    }
  }
  return r;
}

CVector paris_conditional_field(cplx alpha, std::size_t fock_dim, int level,
                                double* probability) {
  Tensor t = prepared(alpha, fock_dim, true);
  CVector f(static_cast<Eigen::Index>(fock_dim));
  for (std::size_t n = 0; n < fock_dim; ++n) f[static_cast<Eigen::Index>(n)] = t.at(level, n, 0);
  if (probability) *probability = f.squaredNorm();
  return f / f.norm();
}

const std::vector<MalformedScript>& malformed_corpus() {
  static const std::vector<MalformedScript> kCorpus = {
      {"unknown_opcode", "SPACE a levels=e,g\nFLIP a\n", 2, "unknown opcode"},
      {"lowercase_opcode", "space a levels=e,g\n", 1, "unknown opcode"},
      {"jc_missing_t",
       "SPACE atom levels=e,g\nSPACE field fock=3\nINIT atom=e field=vac\nJC g=1\n", 4,
       "missing argument t"},
      {"undeclared_label", "SPACE a levels=e,g\nINIT a=e\nPULSE b\n", 3, "undeclared label 'b'"},
      {"malformed_number",
       "SPACE atom levels=e,g\nSPACE field fock=3\nINIT atom=e field=vac\nJC g=1x t=1\n", 4,
       "malformed number '1x'"},
      {"malformed_complex", "SPACE f fock=40\nINIT f=coherent:2+i3\n", 2, "malformed number"},
      {"evolution_before_init", "SPACE a levels=e,g\nPULSE a\n", 2, "PULSE before INIT"},
      {"report_before_init", "SPACE a levels=e,g\nREPORT purity\n", 2, "REPORT before INIT"},
      {"space_after_init", "SPACE a levels=e,g\nINIT a=e\nSPACE b levels=x,y\n", 3,
       "SPACE after INIT"},
      {"duplicate_space", "SPACE a levels=e,g\nSPACE a levels=e,g\n", 2, "already declared"},
      {"init_missing_space", "SPACE a levels=e,g\nSPACE b levels=e,g\nINIT a=e\n", 3,
       "INIT does not set 'b'"},
      {"unknown_level", "SPACE a levels=e,g\nINIT a=x\n", 2, "has no level 'x'"},
      {"duplicate_argument", "SPACE f fock=3\nSPACE f2 fock=3 fock=4\n", 2,
       "duplicate argument fock"},
      {"unknown_argument", "SPACE a levels=e,g\nINIT a=e\nPULSE a strength=2\n", 3,
       "unknown argument strength"},
      {"extra_positional", "SPACE a levels=e,g\nINIT a=e\nDETECT a a\n", 3,
       "unexpected argument"},
      {"erase_without_a", "SPACE a levels=e,g\nINIT a=e\nERASE a\n", 3, "level a"},
      {"disperse_on_non_fock",
       "SPACE a levels=e,g\nSPACE b levels=e,g\nINIT a=e b=e\n"
       "DISPERSE a field=b phi_e=0 phi_g=1\n",
       4, "not a Fock space"},
      {"decay_wrong_dim", "SPACE n levels=u,d,x\nSPACE c levels=a,d\nINIT n=u c=a\nDECAY n c t=1\n",
       4, "two-level"},
      {"decay_negative_time", "SPACE n levels=u,d\nSPACE c levels=a,d\nINIT n=u c=a\nDECAY n c t=-1\n",
       4, "t must be >= 0"},
      {"report_needs_trace", "SPACE a levels=e,g\nINIT a=e\nREPORT populations\n", 3,
       "needs a TRACE"},
      {"report_empty", "SPACE a levels=e,g\nINIT a=e\nTRACE keep=a\nREPORT stage=x\n", 4,
       "no items"},
      {"unnormalized_amps", "SPACE s levels=x,y\nINIT s=amps:1;1\n", 2, "not normalized"},
      {"pointer_wrong_dim",
       "SPACE s levels=x,y\nSPACE p levels=r,x\nINIT s=x p=r\nPULSE s gate=premeasure pointer=p\n",
       4, "needs 3 levels"},
      {"version_late", "SPACE a levels=e,g\nVERSION 1\n", 2, "before any instruction"},
      {"version_unsupported", "VERSION 2\n", 1, "unsupported version"},
      {"ramsey_on_non_atom", "SPACE s levels=x,y\nINIT s=x\nPULSE s\n", 3, "not an atom"},
      {"coherent_on_levels", "SPACE s levels=x,y\nINIT s=coherent:1\n", 2, "needs a Fock space"},
      {"correlation_same_atom",
       "SPACE a levels=e,g\nINIT a=e\nDETECT a\nREPORT correlation=a,a\n", 4,
       "two different atoms"},
      {"error_after_comment_lines", "# name: x\n\n# note\nSPACE a levels=e,g\nINIT a=e\nJC t=1\n",
       6, "missing argument"},
  };
  return kCorpus;
}

}  // namespace catbox::testsupport
