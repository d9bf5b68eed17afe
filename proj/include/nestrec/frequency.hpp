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

#ifndef NESTREC_FREQUENCY_HPP_
#define NESTREC_FREQUENCY_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nestrec/tree.hpp"

namespace nestrec {

class FrequencySequence;

namespace frequency_source {
struct Empirical {};
struct ClosedForm {
  TreeSpec tree;
};
struct LinearCombination {
  std::vector<std::pair<std::int64_t, std::shared_ptr<const FrequencySequence>>>
      terms;
};
}  // namespace frequency_source

using FrequencySource =
    std::variant<frequency_source::Empirical, frequency_source::ClosedForm,
                 frequency_source::LinearCombination>;

// phi(1), ..., phi(v_max) of a slow sequence, together with where the numbers
// came from. Entries are signed because linear combinations may carry
// negative coefficients.
class FrequencySequence {
 public:
  FrequencySequence(std::vector<std::int64_t> entries, FrequencySource source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  std::int64_t v_max() const {
    return static_cast<std::int64_t>(entries_.size());
  }
  // phi(v) for 1 <= v <= v_max().
  std::int64_t at(std::int64_t v) const;
  std::span<const std::int64_t> entries() const { return entries_; }
  const FrequencySource& source() const { return source_; }

  // Values v with phi(v) < 1; nonempty means no slow sequence has these
  // frequencies.
  std::vector<std::int64_t> NonpositiveAt() const;

  // h_v = phi(1) + ... + phi(v), the last index at which v occurs.
  std::vector<std::int64_t> LastOccurrences() const;

  // "v,phi" rows, one per line.
  std::string ToCsv() const;

 private:
  std::vector<std::int64_t> entries_;
  FrequencySource source_;
};

// k-adic valuation: the largest e with k^e | v.
std::int64_t Nu(std::int64_t k, std::int64_t v);

// True iff v is k^e for some e >= 0.
bool IsPowerOf(std::int64_t k, std::int64_t v);

// Frequency of the value v in the cell-count sequence of `spec`:
//   c                                    if j does not divide v,
//   l + x * nu_k(v/j) + s * [v/j = k^e]  otherwise.
std::int64_t ClosedForm(const TreeSpec& spec, std::int64_t v);

FrequencySequence ClosedFormSequence(const TreeSpec& spec, std::int64_t v_max);

// Empirical frequencies of the cell-count sequence of `spec`, for every value
// whose run completes within the first n labels.
FrequencySequence EmpiricalFrequency(const TreeSpec& spec, std::int64_t n);

// Componentwise weighted sum of (s, c, l, x). All components must share the
// arity and the number of leaf cells.
TreeSpec Superpose(
    std::span<const std::pair<std::int64_t, TreeSpec>> components);

FrequencySequence LinearCombination(
    std::span<const std::pair<std::int64_t, FrequencySequence>> terms);

struct FrequencyComparison {
  bool agree = true;
  std::optional<std::int64_t> first_mismatch;
  std::int64_t empirical_value = 0;
  std::int64_t closed_value = 0;
  std::int64_t v_max = 0;
};

FrequencyComparison Compare(const FrequencySequence& empirical,
                            const FrequencySequence& closed,
                            std::int64_t v_max);

void to_json(nlohmann::json& j, const FrequencyComparison& report);

}  // namespace nestrec

#endif  // NESTREC_FREQUENCY_HPP_
