// Copyright 2026 The nestrec Authors
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

#include "nestrec/frequency.hpp"

#include <algorithm>
#include <sstream>

#include "nestrec/error.hpp"
#include "nestrec/recursion.hpp"

namespace nestrec {

std::int64_t FrequencySequence::at(std::int64_t v) const {
  if (v < 1 || v > v_max()) {
    Fail(ErrorCode::kArgument,
         "frequency requested outside 1.." + std::to_string(v_max()));
  }
  return entries_[static_cast<std::size_t>(v - 1)];
}

std::vector<std::int64_t> FrequencySequence::NonpositiveAt() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 1) out.push_back(static_cast<std::int64_t>(i + 1));
  }
  return out;
}

std::vector<std::int64_t> FrequencySequence::LastOccurrences() const {
  std::vector<std::int64_t> out;
  out.reserve(entries_.size());
  std::int64_t total = 0;
  for (std::int64_t phi : entries_) {
    total = arith::Add(total, phi);
    out.push_back(total);
  }
  return out;
}

std::string FrequencySequence::ToCsv() const {
  std::ostringstream out;
  out << "v,phi\n";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out << (i + 1) << ',' << entries_[i] << '\n';
  }
  return out.str();
}

std::int64_t Nu(std::int64_t k, std::int64_t v) {
  if (k < 2) Fail(ErrorCode::kArgument, "valuation base must be >= 2");
  if (v < 1) Fail(ErrorCode::kArgument, "valuation argument must be >= 1");
  std::int64_t e = 0;
  while (v % k == 0) {
    v /= k;
    ++e;
  }
  return e;
}

bool IsPowerOf(std::int64_t k, std::int64_t v) {
  if (v < 1) return false;
  while (v % k == 0) v /= k;
  return v == 1;
}

std::int64_t ClosedForm(const TreeSpec& spec, std::int64_t v) {
  spec.Validate();
  if (v < 1) Fail(ErrorCode::kArgument, "frequency argument v must be >= 1");
  const std::int64_t j = spec.leaf_cells;
  if (v % j != 0) return spec.per_cell;
  // The v-th cell closes leaf h = v/j; it is followed by nu_k(h) regular
  // nodes, plus a supernode when h is a power of k.
  const std::int64_t h = v / j;
  std::int64_t phi = arith::Add(
      spec.last_cell, arith::Mul(spec.regular_labels, Nu(spec.arity, h)));
  if (IsPowerOf(spec.arity, h)) phi = arith::Add(phi, spec.supernode_labels);
  return phi;
}

FrequencySequence ClosedFormSequence(const TreeSpec& spec,
                                     std::int64_t v_max) {
  if (v_max < 0) Fail(ErrorCode::kArgument, "v_max must be >= 0");
  std::vector<std::int64_t> entries;
  entries.reserve(static_cast<std::size_t>(v_max));
  for (std::int64_t v = 1; v <= v_max; ++v) {
    entries.push_back(ClosedForm(spec, v));
  }
  return FrequencySequence(std::move(entries),
                           frequency_source::ClosedForm{spec});
}

FrequencySequence EmpiricalFrequency(const TreeSpec& spec, std::int64_t n) {
  return FrequencyOf(InitialConditions(spec, n));
}

TreeSpec Superpose(
    std::span<const std::pair<std::int64_t, TreeSpec>> components) {
  if (components.empty()) {
    Fail(ErrorCode::kArgument, "superposition needs at least one component");
  }
  const TreeSpec& first = components.front().second;
  TreeSpec out = first;
  out.supernode_labels = 0;
  out.per_cell = 0;
  out.last_cell = 0;
  out.regular_labels = 0;
  for (const auto& [multiplicity, tree] : components) {
    tree.Validate();
    if (multiplicity < 1) {
      Fail(ErrorCode::kArgument, "superposition multiplicities must be >= 1");
    }
    if (tree.arity != first.arity || tree.leaf_cells != first.leaf_cells) {
      Fail(ErrorCode::kArgument,
           "superposed trees must share arity and leaf cells: " +
               ToString(first) + " vs " + ToString(tree));
    }
    out.supernode_labels = arith::Add(
        out.supernode_labels, arith::Mul(multiplicity, tree.supernode_labels));
    out.per_cell =
        arith::Add(out.per_cell, arith::Mul(multiplicity, tree.per_cell));
    out.last_cell =
        arith::Add(out.last_cell, arith::Mul(multiplicity, tree.last_cell));
    out.regular_labels = arith::Add(
        out.regular_labels, arith::Mul(multiplicity, tree.regular_labels));
  }
  return out;
}

FrequencySequence LinearCombination(
    std::span<const std::pair<std::int64_t, FrequencySequence>> terms) {
  if (terms.empty()) Fail(ErrorCode::kArgument, "empty linear combination");
  std::int64_t common = terms.front().second.v_max();
  for (const auto& [coefficient, seq] : terms) {
    common = std::min(common, seq.v_max());
  }
  if (common < 1) {
    Fail(ErrorCode::kArgument, "linear combination has an empty common range");
  }
  std::vector<std::int64_t> entries(static_cast<std::size_t>(common), 0);
  frequency_source::LinearCombination source;
  for (const auto& [coefficient, seq] : terms) {
    for (std::int64_t v = 1; v <= common; ++v) {
      auto& slot = entries[static_cast<std::size_t>(v - 1)];
      slot = arith::Add(slot, arith::Mul(coefficient, seq.at(v)));
    }
    source.terms.emplace_back(coefficient,
                              std::make_shared<const FrequencySequence>(seq));
  }
  return FrequencySequence(std::move(entries), std::move(source));
}

FrequencyComparison Compare(const FrequencySequence& empirical,
                            const FrequencySequence& closed,
                            std::int64_t v_max) {
  if (v_max < 1 || empirical.v_max() < v_max || closed.v_max() < v_max) {
    Fail(ErrorCode::kArgument,
         "comparison range 1.." + std::to_string(v_max) +
             " is not covered by both sequences (" +
             std::to_string(empirical.v_max()) + ", " +
             std::to_string(closed.v_max()) + ")");
  }
  FrequencyComparison report;
  report.v_max = v_max;
  for (std::int64_t v = 1; v <= v_max; ++v) {
    if (empirical.at(v) != closed.at(v)) {
      report.agree = false;
      report.first_mismatch = v;
      report.empirical_value = empirical.at(v);
      report.closed_value = closed.at(v);
      break;
    }
  }
  return report;
}

void to_json(nlohmann::json& j, const FrequencyComparison& report) {
  j = nlohmann::json{{"agree", report.agree}, {"v_max", report.v_max}};
  if (report.first_mismatch) {
    j["first_mismatch"] = *report.first_mismatch;
    j["empirical"] = report.empirical_value;
    j["closed_form"] = report.closed_value;
  } else {
    j["first_mismatch"] = nullptr;
  }
}

}  // namespace nestrec
