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

#include "catbox/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catbox/errors.hpp"

namespace catbox::cavity {

namespace {

constexpr std::size_t kMaxCutoff = 4096;

std::string fock_name(std::size_t n) { return std::to_string(n); }

FockSpace require_single_mode(const DensityOperator& field) {
  if (field.factors().size() != 1 || field.dim() < 2) {
    throw DimensionError("expected a single-mode field operator, got " +
                         describe(field.factors()));
  }
  return FockSpace{field.factors().front()};
}

void require_factor(const StateVector& psi, const SpaceLabel& label) {
  const auto p = position_of(psi.factors(), label.name);
  if (psi.factors()[p].dim != label.dim) {
    throw DimensionError("factor '" + label.name + "' has dim " +
                         std::to_string(psi.factors()[p].dim) + ", expected " +
                         std::to_string(label.dim));
  }
}

void require_normalized(const StateVector& psi) {
  if (!psi.is_normalized()) {
    throw NormalizationError("state norm " + std::to_string(psi.norm()) +
                             " is not 1");
  }
}

// Index of |level, n> in the (atom, field) target basis.
Eigen::Index pair_index(std::size_t level, std::size_t n, std::size_t fock_dim) {
  return static_cast<Eigen::Index>(level * fock_dim + n);
}

struct Branch {
  BranchPath path;
  double probability = 1.0;
  StateVector state;
};

template <typename F>
void for_each_state(std::vector<Branch>& branches, F&& step) {
  for (auto& b : branches) b.state = step(b.state);
}

std::vector<Branch> fork(const std::vector<Branch>& branches,
                         const AtomSpace& atom) {
  std::vector<Branch> out;
  for (const auto& b : branches) {
    for (auto& rec : detect_atom(b.state, atom)) {
      if (rec.probability < tol::kBranchFloor || !rec.post_state) continue;
      BranchPath path = b.path;
      path.emplace_back(atom.label.name, rec.outcome);
      out.push_back({std::move(path), b.probability * rec.probability,
                     std::move(*rec.post_state)});
    }
  }
  return out;
}

ReportRow branch_row(std::string stage, const Branch& b) {
  ReportRow row;
  row.stage = std::move(stage);
  row.branch = branch_id(b.path);
  row.outcomes = branch_outcomes(b.path);
  row.probability = b.probability;
  return row;
}

std::string outcome_of(const BranchPath& path, std::string_view factor) {
  for (const auto& [f, level] : path) {
    if (f == factor) return level;
  }
  throw LabelError("branch " + branch_id(path) + " has no outcome for '" +
                   std::string(factor) + "'");
}

}  // namespace

FockSpace make_fock(std::string name, std::size_t cutoff) {
  if (cutoff < 1) throw DimensionError("Fock cutoff must be >= 1");
  return FockSpace{make_label(std::move(name), cutoff + 1)};
}

std::size_t default_cutoff(cplx alpha) {
  const double a = std::abs(alpha);
  return static_cast<std::size_t>(std::ceil(a * a + 7.0 * a + 10.0));
}

double coherent_tail_mass(double abs_alpha, std::size_t cutoff) {
  if (abs_alpha == 0.0) return 0.0;
  const double x = abs_alpha * abs_alpha;
  const double log_x = std::log(x);
  double tail = 0.0;
  // Terms beyond the Poisson peak decay at least geometrically.
  for (std::size_t n = cutoff + 1;; ++n) {
    const double nd = static_cast<double>(n);
    const double term = std::exp(-x + nd * log_x - std::lgamma(nd + 1.0));
    tail += term;
    if (nd > x && term < 1e-18 * std::max(tail, 1e-300)) break;
    if (n > cutoff + 100000) break;
  }
  return tail;
}

std::size_t required_cutoff(cplx alpha) {
  const double a = std::abs(alpha);
  for (std::size_t n = 1; n <= kMaxCutoff; ++n) {
    if (coherent_tail_mass(a, n) < tol::kTruncationTail) return n;
  }
  return kMaxCutoff;
}

std::size_t resolve_fock_dim(cplx alpha, std::optional<std::size_t> fock_dim) {
  if (fock_dim) {
    if (*fock_dim < 2) throw DimensionError("Fock dimension must be >= 2");
    return *fock_dim;
  }
  return default_cutoff(alpha) + 1;
}

bool AtomSpace::has(std::string_view name) const {
  return std::find(levels.begin(), levels.end(), name) != levels.end();
}

std::size_t AtomSpace::level(std::string_view name) const {
  const auto it = std::find(levels.begin(), levels.end(), name);
  if (it == levels.end()) {
    throw LabelError("atom '" + label.name + "' has no level '" +
                     std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - levels.begin());
}

AtomSpace make_atom(std::string name, bool with_a) {
  std::vector<std::string> levels{"e", "g"};
  if (with_a) levels.emplace_back("a");
  return make_atom(std::move(name), std::move(levels));
}

AtomSpace make_atom(std::string name, std::vector<std::string> levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      if (levels[i] == levels[j]) {
        throw LabelError("atom '" + name + "' repeats level '" + levels[i] + "'");
      }
    }
  }
  AtomSpace atom{make_label(std::move(name), levels.size()), std::move(levels)};
  atom.level("e");
  atom.level("g");
  return atom;
}

StateVector coherent_state(const FockSpace& space, cplx alpha) {
  const std::size_t cutoff = space.cutoff();
  const double tail = coherent_tail_mass(std::abs(alpha), cutoff);
  if (!(tail < tol::kTruncationTail)) {
    const std::size_t need = required_cutoff(alpha);
    throw TruncationError("Fock cutoff " + std::to_string(cutoff) +
                              " too small for |alpha| = " +
                              std::to_string(std::abs(alpha)) +
                              " (tail mass " + std::to_string(tail) +
                              "); need N >= " + std::to_string(need),
                          need);
  }
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(space.label.dim));
  cplx c = std::exp(-0.5 * std::norm(alpha));
  amps[0] = c;
  for (std::size_t n = 1; n <= cutoff; ++n) {
    c *= alpha / std::sqrt(static_cast<double>(n));
    amps[static_cast<Eigen::Index>(n)] = c;
  }
  amps /= amps.norm();
  return StateVector({space.label}, std::move(amps));
}

StateVector cat_state(const FockSpace& space, cplx alpha, int parity) {
  if (parity != 1 && parity != -1) throw DomainError("cat parity must be +1 or -1");
  const auto plus = coherent_state(space, alpha);
  const auto minus = coherent_state(space, -alpha);
  const CVector v = plus.amplitudes() + static_cast<double>(parity) * minus.amplitudes();
  return StateVector({space.label}, v).normalized();
}

CMatrix ramsey_matrix(const AtomSpace& atom) {
  const auto d = static_cast<Eigen::Index>(atom.label.dim);
  const auto e = static_cast<Eigen::Index>(atom.level("e"));
  const auto g = static_cast<Eigen::Index>(atom.level("g"));
  const double r = 1.0 / std::sqrt(2.0);
  CMatrix u = CMatrix::Identity(d, d);
  u(e, e) = r;   // <e|R|e>
  u(g, e) = r;   // <g|R|e>
  u(e, g) = -r;  // <e|R|g>
  u(g, g) = r;   // <g|R|g>
  return u;
}

StateVector ramsey_pulse(const StateVector& psi, const AtomSpace& atom) {
  require_factor(psi, atom.label);
  return apply_unitary(psi, ramsey_matrix(atom), {atom.label.name});
}

StateVector dispersive_shift(const StateVector& psi, const AtomSpace& atom,
                             const FockSpace& field, double phi_e, double phi_g) {
  require_factor(psi, atom.label);
  require_factor(psi, field.label);
  const std::size_t da = atom.label.dim;
  const std::size_t df = field.label.dim;
  const std::size_t e = atom.level("e");
  const std::size_t g = atom.level("g");
  CMatrix u = CMatrix::Identity(static_cast<Eigen::Index>(da * df),
                                static_cast<Eigen::Index>(da * df));
  for (std::size_t n = 0; n < df; ++n) {
    const double nd = static_cast<double>(n);
    u(pair_index(e, n, df), pair_index(e, n, df)) = std::polar(1.0, phi_e * nd);
    u(pair_index(g, n, df), pair_index(g, n, df)) = std::polar(1.0, phi_g * nd);
  }
  return apply_unitary(psi, u, {atom.label.name, field.label.name});
}

StateVector jc_evolve(const StateVector& psi, const AtomSpace& atom,
                      const FockSpace& field, double g, double t) {
  require_factor(psi, atom.label);
  require_factor(psi, field.label);
  if (atom.has("a")) {
    const double pa = population(psi, atom.label.name, atom.level("a"));
    if (pa > tol::kNorm) {
      throw OrderingError("Jaynes-Cummings step on atom '" + atom.label.name +
                          "' after erasure: |a> population " + std::to_string(pa));
    }
  }
  const std::size_t da = atom.label.dim;
  const std::size_t df = field.label.dim;
  const std::size_t e = atom.level("e");
  const std::size_t gl = atom.level("g");
  CMatrix u = CMatrix::Identity(static_cast<Eigen::Index>(da * df),
                                static_cast<Eigen::Index>(da * df));
  for (std::size_t n = 0; n + 1 < df; ++n) {
    const double angle = std::sqrt(static_cast<double>(n + 1)) * g * t;
    const double c = std::cos(angle);
    const cplx is(0.0, std::sin(angle));
    const auto en = pair_index(e, n, df);
    const auto gn1 = pair_index(gl, n + 1, df);
    u(en, en) = c;
    u(gn1, en) = is;
    u(en, gn1) = is;
    u(gn1, gn1) = c;
  }
  return apply_unitary(psi, u, {atom.label.name, field.label.name});
}

ErasureResult erase_which_path(const StateVector& psi, const AtomSpace& atom) {
  require_factor(psi, atom.label);
  if (!atom.has("a")) {
    throw LabelError("atom '" + atom.label.name +
                     "' has no level 'a' to erase which-path information into");
  }
  const std::size_t a = atom.level("a");
  const double pa = population(psi, atom.label.name, a);
  if (pa > tol::kNorm) {
    throw OrderingError("erasure on atom '" + atom.label.name +
                        "' with |a> already populated (" + std::to_string(pa) + ")");
  }
  const auto d = static_cast<Eigen::Index>(atom.label.dim);
  CMatrix m = CMatrix::Zero(d, d);
  m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(atom.level("e"))) = 1.0;
  m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(atom.level("g"))) = 1.0;
  const auto mapped = apply_operator(psi, m, {atom.label.name});
  const double norm_sq = mapped.amplitudes().squaredNorm();
  if (!(norm_sq > tol::kBranchFloor)) {
    throw NormalizationError("erasure map annihilates the state (input has no "
                             "e/g component)");
  }
  return {mapped.normalized(), norm_sq};
}

std::vector<DetectionRecord> detect_atom(const StateVector& psi,
                                         const AtomSpace& atom) {
  require_factor(psi, atom.label);
  require_normalized(psi);
  const double total = psi.amplitudes().squaredNorm();
  std::vector<DetectionRecord> out;
  for (std::size_t l = 0; l < atom.levels.size(); ++l) {
    auto projected = project(psi, atom.label.name, l);
    const double p = projected.amplitudes().squaredNorm() / total;
    DetectionRecord rec{atom.levels[l], l, p, std::nullopt};
    if (p > 0.0) rec.post_state = projected.normalized();
    out.push_back(std::move(rec));
  }
  return out;
}

CatFidelities cat_fidelities(const DensityOperator& field, cplx alpha) {
  const FockSpace space = require_single_mode(field);
  const auto plus = coherent_state(space, alpha);
  const auto minus = coherent_state(space, -alpha);
  CatFidelities out;
  const CVector even = plus.amplitudes() + minus.amplitudes();
  const CVector odd = plus.amplitudes() - minus.amplitudes();
  const auto weight = [&](const CVector& v) {
    const double n2 = v.squaredNorm();
    if (n2 == 0.0) return 0.0;
    return v.dot(field.matrix() * v).real() / n2;
  };
  out.even = weight(even);
  out.odd = weight(odd);
  return out;
}

double cat_fringe_signal(const DensityOperator& field, cplx alpha) {
  const auto f = cat_fidelities(field, alpha);
  return f.even - f.odd;
}

double mean_photon_number(const DensityOperator& field) {
  require_single_mode(field);
  double n = 0.0;
  for (Eigen::Index k = 0; k < field.matrix().rows(); ++k) {
    n += static_cast<double>(k) * field.matrix()(k, k).real();
  }
  return n;
}

ReportRows paris_protocol(const ParisOptions& o) {
  const std::size_t dim = resolve_fock_dim(o.alpha, o.fock_dim);
  const auto atom1 = make_atom(std::string(kParisAtom1));
  const auto atom2 = make_atom(std::string(kParisAtom2));
  const auto field = make_fock(std::string(kField), dim - 1);
  const std::vector<std::string> keep_field{field.label.name};

  StateVector start = tensor(tensor(basis_state(atom1.label, atom1.level("e")),
                                    coherent_state(field, o.alpha)),
                             basis_state(atom2.label, atom2.level("e")));
  std::vector<Branch> branches{{{}, 1.0, std::move(start)}};
  ReportRows rows;

  const auto fringe_rows = [&](const std::string& stage, bool with_cats) {
    for (const auto& b : branches) {
      auto row = branch_row(stage, b);
      const auto rho = reduce(b.state, keep_field);
      row.add("fringe_signal", cat_fringe_signal(rho, o.alpha));
      if (with_cats) {
        const auto f = cat_fidelities(rho, o.alpha);
        row.add("fidelity_even_cat", f.even);
        row.add("fidelity_odd_cat", f.odd);
      }
      rows.push_back(std::move(row));
    }
  };

  for_each_state(branches, [&](const StateVector& s) { return ramsey_pulse(s, atom1); });
  fringe_rows("prep_r1", false);
  for_each_state(branches, [&](const StateVector& s) {
    return dispersive_shift(s, atom1, field, 0.0, kCatPhase);
  });
  fringe_rows("prep_dispersive", false);
  if (o.with_r2) {
    for_each_state(branches, [&](const StateVector& s) { return ramsey_pulse(s, atom1); });
    fringe_rows("prep_r2", false);
  }
  if (o.with_detection) {
    branches = fork(branches, atom1);
    fringe_rows("prep_detect", true);
  }

  for_each_state(branches, [&](const StateVector& s) {
    auto x = ramsey_pulse(s, atom2);
    x = dispersive_shift(x, atom2, field, 0.0, kCatPhase);
    return ramsey_pulse(x, atom2);
  });
  branches = fork(branches, atom2);
  if (!o.with_detection) branches = fork(branches, atom1);
  fringe_rows("probe", false);

  ReportRow summary;
  summary.stage = "summary";
  summary.branch = "summary";
  summary.probability = 0.0;
  double correlation = 0.0;
  std::vector<double> marginal(atom2.levels.size(), 0.0);
  for (const auto& b : branches) {
    summary.probability += b.probability;
    const bool same = outcome_of(b.path, atom1.label.name) ==
                      outcome_of(b.path, atom2.label.name);
    correlation += same ? b.probability : -b.probability;
    marginal[atom2.level(outcome_of(b.path, atom2.label.name))] += b.probability;
  }
  summary.add("correlation_signal", correlation);
  for (std::size_t l = 0; l < atom2.levels.size(); ++l) {
    summary.add("p_" + atom2.label.name + "_" + atom2.levels[l], marginal[l]);
  }
  rows.push_back(std::move(summary));
  return rows;
}

ReportRows garching_protocol(const GarchingOptions& o) {
  const std::size_t dim = resolve_fock_dim(0.0, o.fock_dim);
  const auto atom = make_atom(std::string(kGarchingAtom), true);
  const auto field = make_fock(std::string(kField), dim - 1);

  StateVector psi = tensor(basis_state(atom.label, atom.level("e")),
                           basis_state(field.label, 0));
  psi = jc_evolve(psi, atom, field, o.g, o.t_prime);

  std::vector<Branch> branches{{{}, 1.0, psi}};
  double erasure_norm_sq = 0.0;
  if (o.with_erasure) {
    auto erased = erase_which_path(psi, atom);
    erasure_norm_sq = erased.norm_sq;
    branches = fork({{{}, 1.0, std::move(erased.state)}}, atom);
  }

  ReportRows rows;
  for (const auto& b : branches) {
    auto row = branch_row("final", b);
    const auto rho = reduce(b.state, {field.label.name});
    const auto& m = rho.matrix();
    for (std::size_t n = 0; n < dim; ++n) {
      row.add("pop_" + fock_name(n), m(static_cast<Eigen::Index>(n),
                                       static_cast<Eigen::Index>(n)).real());
    }
    row.add("coherence_0_1", std::abs(m(0, 1)));
    row.add("purity", purity(rho));
    if (o.with_erasure) row.add("erasure_norm_sq", erasure_norm_sq);
    row.matrices.push_back({"rho_" + field.label.name, m});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace catbox::cavity
