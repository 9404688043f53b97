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

// Numerical gates shared by every module. Changing a value here changes
// what the whole library accepts as Hermitian, unitary or normalized.

namespace catbox::tol {

inline constexpr double kHermiticity = 1e-10;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNorm = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

// Poisson mass a coherent state may leave above the Fock cutoff.
inline constexpr double kTruncationTail = 1e-10;

// Detection branches below this probability are not forked.
inline constexpr double kBranchFloor = 1e-14;

}  // namespace catbox::tol
