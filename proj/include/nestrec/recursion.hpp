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

// Forward evaluation of nested recursions of the form
//
//   R(n) = sum_{i=1..k} R(n - a_i - sum_{t=1..p} R(n - b_{i,t}))
//
// from a block of initial conditions.

#ifndef NESTREC_RECURSION_HPP_
#define NESTREC_RECURSION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nestrec/frequency.hpp"

namespace nestrec {

struct RecursionSpec {
  std::int64_t arity = 1;                 // k, number of outer terms
  std::int64_t order = 1;                 // p, inner terms per outer term
  std::vector<std::int64_t> outer_offsets;  // a_1..a_k
  std::vector<std::vector<std::int64_t>> inner_offsets;  // b[k][p], all >= 1

  void Validate() const;

  friend bool operator==(const RecursionSpec&, const RecursionSpec&) = default;
};

std::string ToString(const RecursionSpec& spec);

// A recursion together with optional initial conditions, as read from or
// written to {"arity":k,"order":p,"a":[...],"b":[[...],...],"ic":[...]}.
struct RecursionDocument {
  RecursionSpec spec;
  std::vector<std::int64_t> initial_conditions;
};

void to_json(nlohmann::json& j, const RecursionDocument& doc);
void from_json(const nlohmann::json& j, RecursionDocument& doc);

enum class DeathReason {
  kInnerIndexNonpositive,
  kOuterIndexNonpositive,
  kOuterIndexNotYetDefined,
};

const char* ToString(DeathReason reason);

struct Death {
  std::int64_t index = 0;  // the first n at which R(n) is undefined
  DeathReason reason = DeathReason::kInnerIndexNonpositive;

  friend bool operator==(const Death&, const Death&) = default;
};

struct EvalResult {
  std::vector<std::int64_t> values;  // R(1..N), or R(1..index-1) if dead
  std::optional<Death> death;

  bool alive() const { return !death.has_value(); }
};

// Runs the recursion forward to n_max. R(n) is undefined, and evaluation
// stops, when an inner index n - b is < 1 or an outer index falls outside
// [1, n-1]. Throws Error(kArgument) on empty or nonpositive initial
// conditions and Error(kOverflow) when a sum leaves the int64 range.
EvalResult Evaluate(const RecursionSpec& spec,
                    std::span<const std::int64_t> initial_conditions,
                    std::int64_t n_max);

struct SlownessVerdict {
  bool slow = true;
  // 1-based index of the first offending term (index 1 when values[1] < 1).
  std::optional<std::int64_t> first_violation;
};

// Finite-prefix check: values[1] >= 1 and every step is 0 or 1.
SlownessVerdict IsSlow(std::span<const std::int64_t> values);

// Occurrence counts of 1..values.back()-1; the last value's run may be
// truncated and is left out. Requires a slow prefix.
FrequencySequence FrequencyOf(std::span<const std::int64_t> values);

struct ProbeReport {
  std::int64_t survived_to = 0;  // largest n with R(n) defined
  std::optional<Death> death;
};

ProbeReport DeathProbe(const RecursionSpec& spec,
                       std::span<const std::int64_t> initial_conditions,
                       std::int64_t n_max);

}  // namespace nestrec

#endif  // NESTREC_RECURSION_HPP_
