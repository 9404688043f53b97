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
#include <string>
#include <string_view>
#include <vector>

namespace catbox {

// One tensor factor of a composite Hilbert space.
struct SpaceLabel {
  std::string name;
  std::size_t dim = 1;

  bool operator==(const SpaceLabel&) const = default;
};

// Validates name (identifier) and dim >= 1.
SpaceLabel make_label(std::string name, std::size_t dim);

// Ordered factors of a joint space; the first factor is the most
// significant digit of the joint basis index.
using FactorList = std::vector<SpaceLabel>;

std::size_t total_dim(const FactorList& factors);
std::vector<std::size_t> dims_of(const FactorList& factors);

// Throws LabelError when absent.
std::size_t position_of(const FactorList& factors, std::string_view name);
bool contains(const FactorList& factors, std::string_view name);

// Positions of `names` within `factors`, in the order given.
std::vector<std::size_t> positions_of(const FactorList& factors,
                                      const std::vector<std::string>& names);

std::string describe(const FactorList& factors);

class SpaceRegistry {
 public:
  // Throws LabelError on a duplicate name.
  const SpaceLabel& add(SpaceLabel label);

  const SpaceLabel& at(std::string_view name) const;
  bool contains(std::string_view name) const;
  const FactorList& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  FactorList labels_;
};

}  // namespace catbox
