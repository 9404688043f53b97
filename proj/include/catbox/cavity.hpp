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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catbox/ops.hpp"
#include "catbox/report.hpp"

namespace catbox::cavity {

// Single cavity mode truncated to number states |0> .. |N>.
struct FockSpace {
  SpaceLabel label;

  std::size_t cutoff() const noexcept { return label.dim - 1; }
};

// Throws DimensionError for cutoff < 1.
FockSpace make_fock(std::string name, std::size_t cutoff);

// ceil(|alpha|^2 + 7|alpha| + 10)
std::size_t default_cutoff(cplx alpha);

// Poisson mass above n = cutoff for mean photon number |alpha|^2.
double coherent_tail_mass(double abs_alpha, std::size_t cutoff);

// Smallest cutoff whose tail mass is below tol::kTruncationTail.
std::size_t required_cutoff(cplx alpha);

// Atom with named levels. Cavity operations address levels "e", "g" and,
// for erasure, "a"; any other levels are left alone.
struct AtomSpace {
  SpaceLabel label;
  std::vector<std::string> levels;

  bool has(std::string_view level) const;
  // Throws LabelError if absent.
  std::size_t level(std::string_view name) const;
};

// Levels {e, g} or {e, g, a}.
AtomSpace make_atom(std::string name, bool with_a = false);
// Throws LabelError on duplicate level names or if e/g are missing.
AtomSpace make_atom(std::string name, std::vector<std::string> levels);

struct DetectionRecord {
  std::string outcome;
  std::size_t level = 0;
  double probability = 0.0;
  std::optional<StateVector> post_state;  // empty when probability is 0
};

// Glauber state on the truncated space, renormalized after truncation.
// Throws TruncationError when the tail mass is >= 1e-10.
StateVector coherent_state(const FockSpace& space, cplx alpha);

// Normalized |alpha> + parity |-alpha> (parity = +1 or -1).
StateVector cat_state(const FockSpace& space, cplx alpha, int parity);

// Resonant pi/2 pulse on the {e, g} levels:
//   |e> -> (|e> + |g>)/sqrt2,   |g> -> (|g> - |e>)/sqrt2.
// Two pulses take |e> to |g>.
CMatrix ramsey_matrix(const AtomSpace& atom);
StateVector ramsey_pulse(const StateVector& psi, const AtomSpace& atom);

// Ideal dispersive interaction: the field picks up exp(i phi_e n) when the
// atom is in e and exp(i phi_g n) when it is in g, so |beta> -> |beta e^{i phi}>.
StateVector dispersive_shift(const StateVector& psi, const AtomSpace& atom,
                             const FockSpace& field, double phi_e, double phi_g);

// Resonant Jaynes-Cummings evolution, exact per manifold {|e,n>, |g,n+1>}:
//   |e,n> -> cos(sqrt(n+1) g t)|e,n> + i sin(sqrt(n+1) g t)|g,n+1>.
// |e,N> at the cutoff has no partner and is left unchanged.
// Throws OrderingError if the atom has population in |a>.
StateVector jc_evolve(const StateVector& psi, const AtomSpace& atom,
                      const FockSpace& field, double g, double t);

struct ErasureResult {
  StateVector state;   // renormalized
  double norm_sq = 0;  // squared norm right after the map
};

// Applies |a><e| + |a><g| to the atom and renormalizes. The map is not
// trace preserving; the pre-normalization squared norm is returned.
ErasureResult erase_which_path(const StateVector& psi, const AtomSpace& atom);

// State-selective detection: one record per atom level, in level order.
std::vector<DetectionRecord> detect_atom(const StateVector& psi,
                                         const AtomSpace& atom);

struct CatFidelities {
  double even = 0.0;  // <cat+| rho |cat+>
  double odd = 0.0;   // <cat-| rho |cat->
};

CatFidelities cat_fidelities(const DensityOperator& field, cplx alpha);

// Tr(rho P+) - Tr(rho P-) with P+- the projectors on the normalized
// |alpha> +- |-alpha>. For alpha = 0 the odd cat does not exist and
// contributes nothing.
double cat_fringe_signal(const DensityOperator& field, cplx alpha);

double mean_photon_number(const DensityOperator& field);

// Preparation atom 1 and probe atom 2 through R1 -> C -> R2 -> detector.
struct ParisOptions {
  cplx alpha = 2.0;
  bool with_r2 = true;         // second Ramsey zone for atom 1
  bool with_detection = true;  // detect atom 1 before the probe
  std::optional<std::size_t> fock_dim;
};

// Rows: field fringe after every preparation stage, per-branch conditional
// cat fidelities, joint outcome probabilities at the probe stage, and a
// summary row with the two-atom correlation signal and P(o2).
ReportRows paris_protocol(const ParisOptions& options);

// Atom |e> and cavity vacuum, Jaynes-Cummings to t', optional erasure and
// detection of the atom in |a>.
struct GarchingOptions {
  double g = 1.0;
  double t_prime = 0.0;
  bool with_erasure = true;
  std::optional<std::size_t> fock_dim;
};

ReportRows garching_protocol(const GarchingOptions& options);

// Factor names and phases shared by the native scenarios and their scripts.
inline constexpr std::string_view kParisAtom1 = "atom1";
inline constexpr std::string_view kParisAtom2 = "atom2";
inline constexpr std::string_view kField = "field";
inline constexpr std::string_view kGarchingAtom = "atom";
inline constexpr double kCatPhase = 3.141592653589793;

std::size_t resolve_fock_dim(cplx alpha, std::optional<std::size_t> fock_dim);

}  // namespace catbox::cavity
