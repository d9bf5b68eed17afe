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

#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <vector>

#include "nestrec/error.hpp"
#include "nestrec/recursion.hpp"
#include "oracle.hpp"

namespace nestrec {
namespace {

using Values = std::vector<std::int64_t>;

RecursionSpec Conolly() { return {2, 1, {0, 1}, {{1}, {2}}}; }

TEST(RecursionSpec, ValidateShapes) {
  EXPECT_NO_THROW(Conolly().Validate());
  EXPECT_THROW((RecursionSpec{2, 1, {0}, {{1}, {2}}}).Validate(), Error);
  EXPECT_THROW((RecursionSpec{2, 1, {0, 1}, {{1}, {2, 3}}}).Validate(), Error);
  EXPECT_THROW((RecursionSpec{2, 1, {0, 1}, {{0}, {2}}}).Validate(), Error);
  EXPECT_THROW((RecursionSpec{0, 1, {}, {}}).Validate(), Error);
}

TEST(RecursionSpec, JsonRoundTrip) {
  RecursionDocument doc{Conolly(), {1, 2}};
  const nlohmann::json j = doc;
  EXPECT_EQ(j.at("arity"), 2);
  EXPECT_EQ(j.at("ic"), nlohmann::json::array({1, 2}));
  const auto back = j.get<RecursionDocument>();
  EXPECT_EQ(back.spec, doc.spec);
  EXPECT_EQ(back.initial_conditions, doc.initial_conditions);
  EXPECT_THROW(nlohmann::json::parse(R"({"arity":2})").get<RecursionDocument>(),
               Error);
}

TEST(Evaluate, ConollyPrefix) {
  const auto r = Evaluate(Conolly(), Values{1, 2}, 16);
  ASSERT_TRUE(r.alive());
  EXPECT_EQ(r.values,
            (Values{1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 9}));
}

TEST(Evaluate, HofstadterH) {
  // H(n) = H(n - H(n-1)) + H(n - 2 - H(n-3)), the "H" member of the
  // order-one family with m = j = 1.
  const RecursionSpec h{2, 1, {0, 2}, {{1}, {3}}};
  const auto r = Evaluate(h, Values{1, 2, 3}, 12);
  ASSERT_TRUE(r.alive());
  const auto expected = oracle::Evaluate({0, 2}, {{1}, {3}}, {1, 2, 3}, 12);
  ASSERT_TRUE(expected.has_value());
  EXPECT_EQ(r.values, *expected);
}

TEST(Evaluate, InitialConditionsOnly) {
  const auto r = Evaluate(Conolly(), Values{1, 2}, 2);
  EXPECT_TRUE(r.alive());
  EXPECT_EQ(r.values, (Values{1, 2}));
}

TEST(Evaluate, RejectsBadArguments) {
  EXPECT_THROW(Evaluate(Conolly(), Values{}, 5), Error);
  EXPECT_THROW(Evaluate(Conolly(), Values{1, 2, 3}, 2), Error);
  EXPECT_THROW(Evaluate(Conolly(), Values{1, 0}, 5), Error);
}

TEST(Evaluate, DeathReasons) {
  // n=2: inner index 2-3 < 1.
  const RecursionSpec inner{1, 1, {0}, {{3}}};
  auto r = Evaluate(inner, Values{1}, 5);
  ASSERT_TRUE(r.death.has_value());
  EXPECT_EQ(*r.death, (Death{2, DeathReason::kInnerIndexNonpositive}));
  EXPECT_EQ(r.values, (Values{1}));

  // R(n) = R(n - R(n-1)) with R(1)=5: outer index 2-5 < 1.
  const RecursionSpec outer{1, 1, {0}, {{1}}};
  r = Evaluate(outer, Values{5}, 5);
  ASSERT_TRUE(r.death.has_value());
  EXPECT_EQ(*r.death, (Death{2, DeathReason::kOuterIndexNonpositive}));

  // R(n) = R(n + 3 - R(n-1)) with R(1)=1: outer index 4 >= n.
  const RecursionSpec forward{1, 1, {-3}, {{1}}};
  r = Evaluate(forward, Values{1}, 5);
  ASSERT_TRUE(r.death.has_value());
  EXPECT_EQ(*r.death, (Death{2, DeathReason::kOuterIndexNotYetDefined}));
}

TEST(Evaluate, OverflowIsAnError) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2 + 1;
  // At n=4 both outer terms read R(4 - R(1)) = R(3).
  const RecursionSpec doubling{2, 1, {0, 0}, {{3}, {3}}};
  EXPECT_THROW(Evaluate(doubling, Values{1, 1, big}, 4), Error);
  try {
    Evaluate(doubling, Values{1, 1, big}, 4);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
}

TEST(Evaluate, PropertyMatchesMemoOracle) {
  oracle::Rng rng(424242);
  int alive = 0;
  int dead = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::int64_t k = rng.Between(1, 3);
    const std::int64_t p = rng.Between(1, 3);
    RecursionSpec spec{k, p, {}, {}};
    for (std::int64_t i = 0; i < k; ++i) {
      spec.outer_offsets.push_back(rng.Between(-1, 4));
      std::vector<std::int64_t> row;
      for (std::int64_t t = 0; t < p; ++t) row.push_back(rng.Between(1, 6));
      spec.inner_offsets.push_back(row);
    }
    Values ic;
    const std::int64_t len = rng.Between(1, 8);
    for (std::int64_t i = 0; i < len; ++i) ic.push_back(rng.Between(1, 4));
    const std::int64_t n = len + rng.Between(0, 300);

    const auto got = Evaluate(spec, ic, n);
    const auto want =
        oracle::Evaluate(spec.outer_offsets, spec.inner_offsets, ic, n);
    if (want.has_value()) {
      ASSERT_TRUE(got.alive()) << ToString(spec) << " died at "
                               << got.death->index;
      ASSERT_EQ(got.values, *want) << ToString(spec);
      ++alive;
    } else {
      ASSERT_FALSE(got.alive()) << ToString(spec);
      // The prefix before death agrees with the oracle run to that point.
      const auto prefix = oracle::Evaluate(
          spec.outer_offsets, spec.inner_offsets, ic, got.death->index - 1);
      ASSERT_TRUE(prefix.has_value());
      ASSERT_EQ(got.values, *prefix);
      ASSERT_FALSE(oracle::Evaluate(spec.outer_offsets, spec.inner_offsets, ic,
                                    got.death->index)
                       .has_value());
      ++dead;
    }
  }
  // The generator should exercise both outcomes.
  EXPECT_GT(alive, 20);
  EXPECT_GT(dead, 20);
}

TEST(IsSlow, Verdicts) {
  EXPECT_TRUE(IsSlow(Values{1, 1, 2, 3, 3}).slow);
  const auto jump = IsSlow(Values{1, 2, 4});
  EXPECT_FALSE(jump.slow);
  EXPECT_EQ(jump.first_violation, 3);
  const auto drop = IsSlow(Values{1, 2, 1});
  EXPECT_EQ(drop.first_violation, 3);
  EXPECT_EQ(IsSlow(Values{0, 1}).first_violation, 1);
  EXPECT_TRUE(IsSlow(Values{}).slow);
}

TEST(FrequencyOf, DropsLastValue) {
  const auto f = FrequencyOf(Values{1, 2, 2, 3, 4, 4, 4, 5});
  EXPECT_EQ(std::vector<std::int64_t>(f.entries().begin(), f.entries().end()),
            (Values{1, 2, 1, 3}));
  EXPECT_THROW(FrequencyOf(Values{1, 3}), Error);
  EXPECT_THROW(FrequencyOf(Values{}), Error);
}

TEST(DeathProbe, ReportsSurvival) {
  const auto alive = DeathProbe(Conolly(), Values{1, 2}, 100);
  EXPECT_EQ(alive.survived_to, 100);
  EXPECT_FALSE(alive.death.has_value());
  const auto dead = DeathProbe(RecursionSpec{1, 1, {0}, {{3}}}, Values{1}, 9);
  EXPECT_EQ(dead.survived_to, 1);
  ASSERT_TRUE(dead.death.has_value());
}

}  // namespace
}  // namespace nestrec
