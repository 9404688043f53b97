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

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "catbox/ops.hpp"
#include "catbox/report.hpp"

namespace catbox::cat {

// Fixed basis of the nucleus/cat pair: up = not decayed, down = decayed,
// alive and dead for the cat. Joint order is (nucleus, cat).
struct CatBasis {
  static constexpr std::size_t kUp = 0;
  static constexpr std::size_t kDown = 1;
  static constexpr std::size_t kAlive = 0;
  static constexpr std::size_t kDead = 1;

  static SpaceLabel nucleus() { return {"nucleus", 2}; }
  static SpaceLabel cat() { return {"cat", 2}; }
  static FactorList joint() { return {nucleus(), cat()}; }

  static std::vector<std::string> nucleus_levels() { return {"up", "down"}; }
  static std::vector<std::string> cat_levels() { return {"alive", "dead"}; }
};

// One-hour half-life.
inline const double kDefaultLambda = std::log(2.0) / 3600.0;

struct DecayParams {
  double lambda = kDefaultLambda;  // 1/s
  double t = 0.0;                  // s

  // Throws DomainError unless lambda > 0 and t >= 0 (both finite).
  void validate() const;
};

// |up> (x) |alive>
StateVector initial_state();

// e^{-lambda t / 2}|up,alive> + sqrt(1 - e^{-lambda t})|down,dead>
StateVector evolve_decay(const DecayParams& params);

// The decay law above as a rotation in span{|up,alive>, |down,dead>},
// identity on |up,dead> and |down,alive>. Carries initial_state() to
// evolve_decay(params).
CMatrix decay_rotation(const DecayParams& params);

DensityOperator reduced_cat(double t, double lambda = kDefaultLambda);

// The Hadamard-type rotation |+->, |-> (and |S>, |A> for the cat).
CMatrix plus_minus_basis();

// First: reduction done in the {|+>,|->} nucleus basis with the cat
// written in {|S>,|A>}, then mapped back to {alive, dead}. Second: the
// direct reduction in {up, down}.
std::pair<DensityOperator, DensityOperator> rotated_basis_check(
    double t, double lambda = kDefaultLambda);

// Same check for an arbitrary unitary change of nucleus basis.
std::pair<DensityOperator, DensityOperator> rotated_basis_check(
    double t, double lambda, const CMatrix& nucleus_rotation);

// Closed form e^{-2 lambda t} + (1 - e^{-lambda t})^2.
double cat_purity(double t, double lambda = kDefaultLambda);

// Reduced cat after `params.t`: populations, |<alive|rho|dead>|, purity and
// the matrix itself.
ReportRows cat_protocol(const DecayParams& params);

}  // namespace catbox::cat
