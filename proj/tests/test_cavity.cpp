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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "catbox/cavity.hpp"
#include "catbox/errors.hpp"
#include "support/support.hpp"

namespace catbox::cavity {
namespace {

using std::numbers::pi;

TEST(Fock, DefaultCutoff) {
  EXPECT_EQ(default_cutoff(0.0), 10u);
  EXPECT_EQ(default_cutoff(2.0), 28u);
  EXPECT_EQ(resolve_fock_dim(2.0, std::nullopt), 29u);
  EXPECT_EQ(resolve_fock_dim(2.0, 7), 7u);
  EXPECT_THROW(resolve_fock_dim(2.0, 1), DimensionError);
  EXPECT_THROW(make_fock("f", 0), DimensionError);
}

TEST(Fock, TailMassAtDefaultCutoff) {
  for (double r = 0.0; r <= 3.0; r += 0.125) {
    EXPECT_LT(coherent_tail_mass(r, default_cutoff(r)), 1e-10) << r;
  }
}

TEST(Fock, TailMassMatchesDirectSum) {
  const double r = 1.5;
  for (std::size_t n : {2u, 5u, 10u}) {
    double inside = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      inside += std::exp(-r * r) * std::pow(r * r, k) / std::tgamma(k + 1.0);
    }
    EXPECT_NEAR(coherent_tail_mass(r, n), 1.0 - inside, 1e-13);
  }
}

TEST(Coherent, MatchesPoissonAmplitudes) {
  const auto f = make_fock("f", 30);
  for (cplx a : {cplx(0.0), cplx(1.0, 0.5), cplx(-2.0, 0.3), cplx(0.0, 2.5)}) {
    const auto psi = coherent_state(f, a);
    const CVector ref = testsupport::coherent_amplitudes(a, 31);
    EXPECT_LT((psi.amplitudes() - ref).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
  }
}

TEST(Coherent, TruncationErrorNamesCutoff) {
  const auto f = make_fock("f", 5);
  try {
    coherent_state(f, 2.0);
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_GT(e.required_cutoff(), 5u);
    EXPECT_LT(coherent_tail_mass(2.0, e.required_cutoff()), 1e-10);
    EXPECT_GE(coherent_tail_mass(2.0, e.required_cutoff() - 1), 1e-10);
  }
}

TEST(Coherent, OverlapWithMirror) {
  const auto f = make_fock("f", 40);
  for (double a : {0.5, 1.0, 2.0}) {
    const double overlap = inner(coherent_state(f, a), coherent_state(f, -a)).real();
    EXPECT_NEAR(overlap, std::exp(-2 * a * a), 1e-12);
  }
}

TEST(Cats, ParityAndFringe) {
  const auto f = make_fock("field", 28);
  const auto even = cat_state(f, 2.0, 1);
  const auto odd = cat_state(f, 2.0, -1);
  EXPECT_NEAR(std::abs(inner(even, odd)), 0.0, 1e-14);
  for (Eigen::Index n = 1; n < 29; n += 2) EXPECT_LT(std::abs(even.amplitudes()[n]), 1e-14);
  EXPECT_NEAR(cat_fringe_signal(to_density(even), 2.0), 1.0, 1e-12);
  EXPECT_NEAR(cat_fringe_signal(to_density(odd), 2.0), -1.0, 1e-12);
  EXPECT_NEAR(mean_photon_number(to_density(coherent_state(f, 2.0))), 4.0, 1e-10);
  EXPECT_THROW(cat_state(f, 2.0, 0), DomainError);
}

TEST(Cats, VacuumHasNoOddCat) {
  const auto f = make_fock("field", 10);
  const auto vac = to_density(basis_state(f.label, 0));
  const auto fid = cat_fidelities(vac, 0.0);
  EXPECT_NEAR(fid.even, 1.0, 1e-15);
  EXPECT_EQ(fid.odd, 0.0);
}

TEST(Atoms, RamseyConvention) {
  const auto a = make_atom("atom");
  const auto e = basis_state(a.label, a.level("e"));
  const auto once = ramsey_pulse(e, a);
  EXPECT_NEAR(once.amplitudes()[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(once.amplitudes()[1].real(), 1 / std::sqrt(2.0), 1e-15);
  const auto twice = ramsey_pulse(once, a);
  EXPECT_NEAR(std::abs(twice.amplitudes()[1]), 1.0, 1e-15);
  const auto g = ramsey_pulse(basis_state(a.label, a.level("g")), a);
  EXPECT_NEAR(g.amplitudes()[0].real(), -1 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(make_atom("x", std::vector<std::string>{"e", "e", "g"}), LabelError);
  EXPECT_THROW(make_atom("x", std::vector<std::string>{"e", "a"}), LabelError);
}

TEST(Atoms, RamseyLeavesOtherLevels) {
  const auto a = make_atom("atom", true);
  const auto s = ramsey_pulse(basis_state(a.label, a.level("a")), a);
  EXPECT_NEAR(std::abs(s.amplitudes()[2]), 1.0, 1e-15);
}

TEST(Dispersive, ShiftsCoherentPhase) {
  const auto a = make_atom("atom");
  const auto f = make_fock("field", 30);
  const auto psi = tensor(basis_state(a.label, a.level("g")), coherent_state(f, 1.5));
  const auto out = dispersive_shift(psi, a, f, 0.0, pi);
  const auto expected = tensor(basis_state(a.label, a.level("g")), coherent_state(f, -1.5));
  EXPECT_NEAR(fidelity(out, expected), 1.0, 1e-13);
}

TEST(JaynesCummings, VacuumRabiLaw) {
  const auto a = make_atom("atom", true);
  const auto f = make_fock("field", 10);
  const auto start = tensor(basis_state(a.label, a.level("e")), basis_state(f.label, 0));
  for (int k = 0; k < 16; ++k) {
    const double gt = 0.2 * k;
    const auto psi = jc_evolve(start, a, f, 1.0, gt);
    const std::size_t e0[] = {0, 0};
    const std::size_t g1[] = {1, 1};
    EXPECT_NEAR(psi.amplitude(e0).real(), std::cos(gt), 1e-14);
    EXPECT_NEAR(psi.amplitude(g1).imag(), std::sin(gt), 1e-14);
  }
}

TEST(JaynesCummings, ManifoldRotationPerPhotonNumber) {
  const auto a = make_atom("atom");
  const auto f = make_fock("field", 6);
  for (std::size_t n = 0; n < 6; ++n) {
    const std::size_t lv[] = {a.level("e"), n};
    const auto psi = jc_evolve(basis_state({a.label, f.label}, lv), a, f, 0.7, 1.3);
    const double angle = std::sqrt(n + 1.0) * 0.7 * 1.3;
    EXPECT_NEAR(std::abs(psi.amplitude(lv)), std::abs(std::cos(angle)), 1e-14);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
  }
}

TEST(JaynesCummings, RefusesAfterErasure) {
  const auto a = make_atom("atom", true);
  const auto f = make_fock("field", 4);
  const std::size_t lv[] = {a.level("a"), 0};
  const auto psi = basis_state({a.label, f.label}, lv);
  EXPECT_THROW(jc_evolve(psi, a, f, 1.0, 1.0), OrderingError);
  EXPECT_THROW(erase_which_path(psi, a), OrderingError);
}

TEST(Erasure, RestoresFieldCoherence) {
  const auto a = make_atom("atom", true);
  const auto f = make_fock("field", 10);
  const auto start = tensor(basis_state(a.label, 0), basis_state(f.label, 0));
  const auto psi = jc_evolve(start, a, f, 1.0, pi / 4);
  EXPECT_NEAR(std::abs(reduce(psi, {"field"}).matrix()(0, 1)), 0.0, 1e-14);
  const auto r = erase_which_path(psi, a);
  EXPECT_NEAR(r.norm_sq, 1.0, 1e-14);
  EXPECT_NEAR(std::abs(reduce(r.state, {"field"}).matrix()(0, 1)), 0.5, 1e-12);
}

TEST(Detection, ProbabilitiesAndPostStates) {
  const auto a = make_atom("atom");
  const auto f = make_fock("field", 3);
  CVector v = CVector::Zero(8);
  v[0] = 0.6;
  v[5] = cplx(0, 0.8);
  const auto recs = detect_atom(StateVector({a.label, f.label}, v), a);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_NEAR(recs[0].probability, 0.36, 1e-15);
  EXPECT_NEAR(recs[1].probability, 0.64, 1e-15);
  EXPECT_EQ(recs[1].outcome, "g");
  EXPECT_NEAR(recs[1].post_state->norm(), 1.0, 1e-15);
  EXPECT_THROW(detect_atom(StateVector({a.label, f.label}, 2.0 * v), a), NormalizationError);
}

class ParisOracle : public ::testing::TestWithParam<std::tuple<double, bool, bool>> {};

TEST_P(ParisOracle, MatchesAmplitudeChain) {
  const auto [alpha, r2, detect] = GetParam();
  ParisOptions o;
  o.alpha = alpha;
  o.with_r2 = r2;
  o.with_detection = detect;
  const auto rows = paris_protocol(o);
  const auto& summary = rows.back();
  ASSERT_EQ(summary.branch, "summary");
  const auto dim = resolve_fock_dim(alpha, std::nullopt);
  const auto chain = testsupport::paris_chain(alpha, r2, dim);
  EXPECT_NEAR(summary.scalar("correlation_signal"), chain.correlation, 1e-10);
  EXPECT_NEAR(summary.scalar("p_atom2_e"), chain.atom2[0], 1e-10);
  EXPECT_NEAR(summary.scalar("p_atom2_g"), chain.atom2[1], 1e-10);
  EXPECT_NEAR(summary.probability, 1.0, 1e-10);
  double probe_mass = 0.0;
  for (const auto& row : rows) {
    if (row.stage == "probe") probe_mass += row.probability;
  }
  EXPECT_NEAR(probe_mass, 1.0, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(
    Variants, ParisOracle,
    ::testing::Combine(::testing::Values(0.0, 0.5, 1.0, 2.0, 2.5), ::testing::Bool(),
                       ::testing::Bool()));

TEST(Paris, ConditionalCatsAndProbabilities) {
  const auto rows = paris_protocol({});
  const double x = std::exp(-8.0);
  int seen = 0;
  for (const auto& row : rows) {
    if (row.stage != "prep_detect") continue;
    ++seen;
    if (row.outcomes.at(0) == "g") {
      EXPECT_NEAR(row.probability, (1 + x) / 2, 1e-10);
      EXPECT_GT(row.scalar("fidelity_even_cat"), 1 - 1e-8);
    } else {
      EXPECT_NEAR(row.probability, (1 - x) / 2, 1e-10);
      EXPECT_GT(row.scalar("fidelity_odd_cat"), 1 - 1e-8);
    }
  }
  EXPECT_EQ(seen, 2);
}

TEST(Paris, FringeOfMixtureIsOverlap) {
  ParisOptions o;
  o.with_r2 = false;
  o.with_detection = false;
  for (const auto& row : paris_protocol(o)) {
    if (row.stage == "prep_dispersive") {
      EXPECT_NEAR(row.scalar("fringe_signal"), std::exp(-8.0), 1e-10);
    }
  }
}

TEST(Paris, VacuumProbeIgnoresSecondZone) {
  ParisOptions with;
  with.alpha = 0.0;
  ParisOptions without = with;
  without.with_r2 = false;
  const auto a = paris_protocol(with).back();
  const auto b = paris_protocol(without).back();
  EXPECT_NEAR(a.scalar("p_atom2_e"), b.scalar("p_atom2_e"), 1e-12);
  EXPECT_NEAR(a.scalar("p_atom2_g"), b.scalar("p_atom2_g"), 1e-12);
}

TEST(Garching, SweepFollowsRabiLaw) {
  for (int k = 0; k < 32; ++k) {
    const double gt = k * pi / 31.0;
    GarchingOptions o;
    o.t_prime = gt;
    o.with_erasure = false;
    const auto plain = garching_protocol(o).at(0);
    EXPECT_NEAR(plain.scalar("pop_0"), std::pow(std::cos(gt), 2), 1e-12);
    EXPECT_NEAR(plain.scalar("pop_1"), std::pow(std::sin(gt), 2), 1e-12);
    EXPECT_LT(plain.scalar("coherence_0_1"), 1e-14);
    o.with_erasure = true;
    const auto erased = garching_protocol(o).at(0);
    EXPECT_EQ(erased.branch, "atom=a");
    EXPECT_NEAR(erased.probability, 1.0, 1e-12);
    EXPECT_NEAR(erased.scalar("coherence_0_1"), std::abs(std::sin(2 * gt)) / 2, 1e-12);
  }
}

TEST(Garching, ZeroTimeIsVacuum) {
  GarchingOptions o;
  o.t_prime = 0.0;
  const auto row = garching_protocol(o).at(0);
  EXPECT_NEAR(row.scalar("pop_0"), 1.0, 1e-15);
  EXPECT_NEAR(row.probability, 1.0, 1e-15);
}

}  // namespace
}  // namespace catbox::cavity
