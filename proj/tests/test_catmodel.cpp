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

#include "catbox/catmodel.hpp"
#include "catbox/errors.hpp"
#include "support/support.hpp"

namespace catbox::cat {
namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Cat, InitialStateIsUpAlive) {
  const auto psi = initial_state();
  const std::size_t l[] = {CatBasis::kUp, CatBasis::kAlive};
  EXPECT_EQ(psi.amplitude(l), cplx(1.0));
}

TEST(Cat, OneHalfLifeIsEvenMixture) {
  const auto rho = reduced_cat(3600.0);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.5, 1e-12);
  EXPECT_LT(std::abs(rho.matrix()(0, 1)), 1e-14);
  EXPECT_NEAR(purity(rho), 0.5, 1e-12);
}

TEST(Cat, TwoHalfLives) {
  const auto rho = reduced_cat(7200.0);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.25, 1e-12);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.75, 1e-12);
}

TEST(Cat, TimeZeroIsPureAlive) {
  const auto rho = reduced_cat(0.0);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(purity(rho), 1.0, 1e-15);
}

TEST(Cat, PurityClosedForm) {
  for (double t : {0.0, 1.0, 600.0, 3600.0, 1e4, 1e5}) {
    EXPECT_NEAR(purity(reduced_cat(t)), cat_purity(t), 1e-12) << t;
  }
}

TEST(Cat, TinyDecayKeepsPrecision) {
  const DecayParams p{1e-20, 1.0};
  const auto psi = evolve_decay(p);
  const std::size_t gone[] = {CatBasis::kDown, CatBasis::kDead};
  EXPECT_NEAR(std::abs(psi.amplitude(gone)), 1e-10, 1e-22);
}

TEST(Cat, RotationCarriesInitialState) {
  for (double t : {0.0, 100.0, 3600.0, 20000.0}) {
    const DecayParams p{kDefaultLambda, t};
    const CVector moved = decay_rotation(p) * initial_state().amplitudes();
    EXPECT_LT((moved - evolve_decay(p).amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(unitarity_deviation(decay_rotation(p)), 1e-14);
  }
}

TEST(Cat, RejectsBadParameters) {
  EXPECT_THROW(evolve_decay({-1.0, 1.0}), DomainError);
  EXPECT_THROW(evolve_decay({1.0, -1.0}), DomainError);
  EXPECT_THROW(evolve_decay({0.0, 1.0}), DomainError);
}

TEST(Cat, BasisInvariance) {
  const auto [rotated, direct] = rotated_basis_check(3600.0);
  EXPECT_LT(max_abs(rotated.matrix() - direct.matrix()), 1e-12);
  testsupport::Rng rng(31);
  for (int k = 0; k < 25; ++k) {
    const auto [r, d] = rotated_basis_check(1000.0 * k, kDefaultLambda,
                                            testsupport::haar_unitary(rng, 2));
    EXPECT_LT(max_abs(r.matrix() - d.matrix()), 1e-12);
  }
}

TEST(Cat, ProtocolRow) {
  const auto rows = cat_protocol({kDefaultLambda, 3600.0});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].scalar("pop_alive"), 0.5, 1e-12);
  EXPECT_NEAR(rows[0].scalar("pop_dead"), 0.5, 1e-12);
  EXPECT_LT(rows[0].scalar("coherence_0_1"), 1e-14);
  EXPECT_EQ(rows[0].matrices.at(0).name, "rho_cat");
}

}  // namespace
}  // namespace catbox::cat
