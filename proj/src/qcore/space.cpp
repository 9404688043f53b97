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

#include "catbox/space.hpp"

#include <algorithm>
#include <cctype>

#include "catbox/errors.hpp"

namespace catbox {

namespace {

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  const auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && name.front() != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_';
  });
}

}  // namespace

SpaceLabel make_label(std::string name, std::size_t dim) {
  if (!is_identifier(name)) {
    throw LabelError("space label '" + name + "' is not an identifier");
  }
  if (dim < 1) {
    throw DimensionError("space '" + name + "' must have dim >= 1");
  }
  return SpaceLabel{std::move(name), dim};
}

std::size_t total_dim(const FactorList& factors) {
  std::size_t d = 1;
  for (const auto& f : factors) d *= f.dim;
  return d;
}

std::vector<std::size_t> dims_of(const FactorList& factors) {
  std::vector<std::size_t> dims;
  dims.reserve(factors.size());
  for (const auto& f : factors) dims.push_back(f.dim);
  return dims;
}

std::size_t position_of(const FactorList& factors, std::string_view name) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].name == name) return i;
  }
  throw LabelError("no factor '" + std::string(name) + "' in " +
                   describe(factors));
}

bool contains(const FactorList& factors, std::string_view name) {
  return std::any_of(factors.begin(), factors.end(),
                     [&](const SpaceLabel& f) { return f.name == name; });
}

std::vector<std::size_t> positions_of(const FactorList& factors,
                                      const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    const std::size_t p = position_of(factors, n);
    if (std::find(out.begin(), out.end(), p) != out.end()) {
      throw LabelError("factor '" + n + "' listed twice");
    }
    out.push_back(p);
  }
  return out;
}

std::string describe(const FactorList& factors) {
  std::string s = "(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += ", ";
    s += factors[i].name + ":" + std::to_string(factors[i].dim);
  }
  return s + ")";
}

const SpaceLabel& SpaceRegistry::add(SpaceLabel label) {
  if (contains(label.name)) {
    throw LabelError("space '" + label.name + "' already declared");
  }
  labels_.push_back(make_label(std::move(label.name), label.dim));
  return labels_.back();
}

const SpaceLabel& SpaceRegistry::at(std::string_view name) const {
  return labels_[position_of(labels_, name)];
}

bool SpaceRegistry::contains(std::string_view name) const {
  return catbox::contains(labels_, name);
}

}  // namespace catbox
