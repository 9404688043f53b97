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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace catbox {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown, duplicate or overlapping factor labels.
class LabelError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Matrix handed in as an observable is not Hermitian.
class ObservableError : public Error {
 public:
  using Error::Error;
};

class UnitarityError : public Error {
 public:
  using Error::Error;
};

// A density matrix violates Hermiticity, unit trace or positivity.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its physical domain (negative time, zero rate, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, std::size_t required_cutoff)
      : Error(what), required_cutoff_(required_cutoff) {}

  // Smallest Fock cutoff N that satisfies the tail-mass gate.
  std::size_t required_cutoff() const noexcept { return required_cutoff_; }

 private:
  std::size_t required_cutoff_;
};

// Operation applied in an order the model does not allow, e.g. a
// Jaynes-Cummings step after the atom was moved to |a>.
class OrderingError : public Error {
 public:
  using Error::Error;
};

}  // namespace catbox
