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

#include "nestrec/recursion.hpp"

#include <sstream>

#include "nestrec/error.hpp"

namespace nestrec {

void RecursionSpec::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) Fail(ErrorCode::kArgument, "recursion spec: " + what);
  };
  require(arity >= 1, "arity must be >= 1");
  require(order >= 1, "order must be >= 1");
  require(static_cast<std::int64_t>(outer_offsets.size()) == arity,
          "expected " + std::to_string(arity) + " outer offsets, got " +
              std::to_string(outer_offsets.size()));
  require(static_cast<std::int64_t>(inner_offsets.size()) == arity,
          "expected " + std::to_string(arity) + " rows of inner offsets, got " +
              std::to_string(inner_offsets.size()));
  for (const auto& row : inner_offsets) {
    require(static_cast<std::int64_t>(row.size()) == order,
            "every inner offset row needs " + std::to_string(order) +
                " entries");
    for (std::int64_t b : row) require(b >= 1, "inner offsets must be >= 1");
  }
}

std::string ToString(const RecursionSpec& spec) {
  std::ostringstream out;
  out << "R(n) =";
  for (std::int64_t i = 0; i < spec.arity; ++i) {
    out << (i == 0 ? " " : " + ") << "R(n";
    const std::int64_t a = spec.outer_offsets[static_cast<std::size_t>(i)];
    if (a > 0) out << " - " << a;
    if (a < 0) out << " + " << -a;
    for (std::int64_t b : spec.inner_offsets[static_cast<std::size_t>(i)]) {
      out << " - R(n - " << b << ")";
    }
    out << ")";
  }
  return out.str();
}

void to_json(nlohmann::json& j, const RecursionDocument& doc) {
  j = nlohmann::json{{"arity", doc.spec.arity},
                     {"order", doc.spec.order},
                     {"a", doc.spec.outer_offsets},
                     {"b", doc.spec.inner_offsets}};
  if (!doc.initial_conditions.empty()) j["ic"] = doc.initial_conditions;
}

void from_json(const nlohmann::json& j, RecursionDocument& doc) {
  try {
    doc.spec.arity = j.at("arity").get<std::int64_t>();
    doc.spec.order = j.at("order").get<std::int64_t>();
    doc.spec.outer_offsets = j.at("a").get<std::vector<std::int64_t>>();
    doc.spec.inner_offsets =
        j.at("b").get<std::vector<std::vector<std::int64_t>>>();
    doc.initial_conditions.clear();
    if (j.contains("ic")) {
      doc.initial_conditions = j.at("ic").get<std::vector<std::int64_t>>();
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("recursion spec JSON: ") + e.what());
  }
  doc.spec.Validate();
}

const char* ToString(DeathReason reason) {
  switch (reason) {
    case DeathReason::kInnerIndexNonpositive:
      return "InnerIndexNonpositive";
    case DeathReason::kOuterIndexNonpositive:
      return "OuterIndexNonpositive";
    case DeathReason::kOuterIndexNotYetDefined:
      return "OuterIndexNotYetDefined";
  }
  return "?";
}

EvalResult Evaluate(const RecursionSpec& spec,
                    std::span<const std::int64_t> initial_conditions,
                    std::int64_t n_max) {
  spec.Validate();
  if (initial_conditions.empty()) {
    Fail(ErrorCode::kArgument, "initial conditions must be nonempty");
  }
  const auto ic_len = static_cast<std::int64_t>(initial_conditions.size());
  if (n_max < ic_len) {
    Fail(ErrorCode::kArgument, "n_max " + std::to_string(n_max) +
                                   " is shorter than the initial conditions");
  }
  for (std::int64_t v : initial_conditions) {
    if (v < 1) Fail(ErrorCode::kArgument, "initial conditions must be >= 1");
  }

  EvalResult result;
  auto& r = result.values;
  r.reserve(static_cast<std::size_t>(n_max));
  r.assign(initial_conditions.begin(), initial_conditions.end());
  // r[n-1] holds R(n).
  for (std::int64_t n = ic_len + 1; n <= n_max; ++n) {
    std::int64_t total = 0;
    for (std::int64_t i = 0; i < spec.arity; ++i) {
      std::int64_t arg = arith::Sub(n, spec.outer_offsets[i]);
      for (std::int64_t b : spec.inner_offsets[i]) {
        const std::int64_t inner = n - b;
        if (inner < 1) {
          result.death = Death{n, DeathReason::kInnerIndexNonpositive};
          return result;
        }
        arg = arith::Sub(arg, r[static_cast<std::size_t>(inner - 1)]);
      }
      if (arg < 1) {
        result.death = Death{n, DeathReason::kOuterIndexNonpositive};
        return result;
      }
      if (arg >= n) {
        result.death = Death{n, DeathReason::kOuterIndexNotYetDefined};
        return result;
      }
      total = arith::Add(total, r[static_cast<std::size_t>(arg - 1)]);
    }
    r.push_back(total);
  }
  return result;
}

SlownessVerdict IsSlow(std::span<const std::int64_t> values) {
  if (values.empty()) return {};
  if (values[0] < 1) return {false, 1};
  for (std::size_t i = 1; i < values.size(); ++i) {
    const std::int64_t step = values[i] - values[i - 1];
    if (step != 0 && step != 1) {
      return {false, static_cast<std::int64_t>(i + 1)};
    }
  }
  return {};
}

FrequencySequence FrequencyOf(std::span<const std::int64_t> values) {
  const SlownessVerdict verdict = IsSlow(values);
  if (values.empty() || !verdict.slow) {
    Fail(ErrorCode::kArgument,
         values.empty() ? "frequency of an empty sequence"
                        : "frequency of a non-slow sequence (violation at " +
                              std::to_string(*verdict.first_violation) + ")");
  }
  const std::int64_t complete = values.back() - 1;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(complete), 0);
  for (std::int64_t v : values) {
    if (v <= complete) ++counts[static_cast<std::size_t>(v - 1)];
  }
  return FrequencySequence(std::move(counts), frequency_source::Empirical{});
}

ProbeReport DeathProbe(const RecursionSpec& spec,
                       std::span<const std::int64_t> initial_conditions,
                       std::int64_t n_max) {
  const EvalResult result = Evaluate(spec, initial_conditions, n_max);
  ProbeReport report;
  report.survived_to = static_cast<std::int64_t>(result.values.size());
  report.death = result.death;
  return report;
}

}  // namespace nestrec
