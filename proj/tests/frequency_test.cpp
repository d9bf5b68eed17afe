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

#include <algorithm>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "nestrec/error.hpp"
#include "nestrec/families.hpp"
#include "nestrec/frequency.hpp"
#include "nestrec/tree.hpp"
#include "oracle.hpp"

namespace nestrec {
namespace {

using Values = std::vector<std::int64_t>;

Values Entries(const FrequencySequence& f) {
  return Values(f.entries().begin(), f.entries().end());
}

TEST(Nu, Valuations) {
  EXPECT_EQ(Nu(2, 1), 0);
  EXPECT_EQ(Nu(2, 8), 3);
  EXPECT_EQ(Nu(2, 12), 2);
  EXPECT_EQ(Nu(3, 54), 3);
  EXPECT_EQ(Nu(5, 7), 0);
  EXPECT_THROW(Nu(1, 4), Error);
  EXPECT_THROW(Nu(2, 0), Error);
}

TEST(IsPowerOf, Values) {
  EXPECT_TRUE(IsPowerOf(2, 1));
  EXPECT_TRUE(IsPowerOf(2, 64));
  EXPECT_FALSE(IsPowerOf(2, 12));
  EXPECT_TRUE(IsPowerOf(3, 81));
  EXPECT_FALSE(IsPowerOf(3, 6));
  EXPECT_FALSE(IsPowerOf(2, 0));
}

TEST(ClosedForm, ConollyAndKaryConolly) {
  for (std::int64_t k = 2; k <= 5; ++k) {
    const TreeSpec t{k, 0, 1, 1, 1, 1};
    for (std::int64_t v = 1; v <= 1000; ++v) {
      ASSERT_EQ(ClosedForm(t, v), Nu(k, v) + 1) << "k=" << k << " v=" << v;
    }
  }
}

TEST(ClosedForm, HIsConstantTwo) {
  const TreeSpec h = TreeOf(family::H{});
  for (std::int64_t v = 1; v <= 100; ++v) EXPECT_EQ(ClosedForm(h, v), 2);
}

TEST(ClosedForm, PropertyMatchesCountedOccurrences) {
  oracle::Rng rng(1234);
  for (int trial = 0; trial < 150; ++trial) {
    const TreeSpec t{rng.Between(2, 5), rng.Between(0, 3), rng.Between(1, 4),
                     rng.Between(1, 3), rng.Between(1, 4), rng.Between(0, 5)};
    const auto counts = oracle::CellCounts(
        {t.arity, t.supernode_labels, t.leaf_cells, t.per_cell, t.last_cell,
         t.regular_labels},
        4000);
    const std::int64_t complete = counts.back() - 1;
    const auto seen = oracle::Occurrences(counts, complete);
    for (std::int64_t v = 1; v <= complete; ++v) {
      ASSERT_EQ(ClosedForm(t, v), seen[static_cast<std::size_t>(v - 1)])
          << ToString(t) << " v=" << v;
    }
    ASSERT_EQ(Entries(EmpiricalFrequency(t, 4000)), seen) << ToString(t);
  }
}

TEST(Superpose, AddsComponentsAndClosedFormsAdd) {
  oracle::Rng rng(2468);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t k = rng.Between(2, 4);
    const std::int64_t j = rng.Between(1, 3);
    std::vector<std::pair<std::int64_t, TreeSpec>> parts;
    const std::int64_t count = rng.Between(1, 3);
    for (std::int64_t i = 0; i < count; ++i) {
      parts.emplace_back(rng.Between(1, 3),
                         TreeSpec{k, rng.Between(0, 2), j, rng.Between(1, 2),
                                  rng.Between(1, 3), rng.Between(0, 3)});
    }
    const TreeSpec sum = Superpose(parts);
    for (std::int64_t v = 1; v <= 1000; ++v) {
      std::int64_t expected = 0;
      for (const auto& [mult, tree] : parts) expected += mult * ClosedForm(tree, v);
      ASSERT_EQ(ClosedForm(sum, v), expected) << ToString(sum) << " v=" << v;
    }
  }
}

TEST(Superpose, RejectsMismatchedSkeletons) {
  const std::vector<std::pair<std::int64_t, TreeSpec>> bad = {
      {1, TreeSpec{2, 0, 1, 1, 1, 1}}, {1, TreeSpec{3, 0, 1, 1, 1, 1}}};
  EXPECT_THROW(Superpose(bad), Error);
  const std::vector<std::pair<std::int64_t, TreeSpec>> zero = {
      {0, TreeSpec{2, 0, 1, 1, 1, 1}}};
  EXPECT_THROW(Superpose(zero), Error);
  EXPECT_THROW(Superpose({}), Error);
}

TEST(LastOccurrences, MatchLastIndexOfEachValue) {
  for (const TreeSpec& t :
       {TreeSpec{2, 1, 3, 1, 2, 2}, TreeSpec{3, 0, 1, 1, 2, 1},
        TreeSpec{2, 0, 3, 2, 5, 3}}) {
    const auto counts = InitialConditions(t, 20000);
    const auto last = ClosedFormSequence(t, 1000).LastOccurrences();
    std::int64_t v = 1;
    for (std::size_t n = 0; n + 1 < counts.size() && v <= 1000; ++n) {
      if (counts[n + 1] != counts[n]) {
        ASSERT_EQ(counts[n], v);
        ASSERT_EQ(last[static_cast<std::size_t>(v - 1)],
                  static_cast<std::int64_t>(n + 1))
            << ToString(t) << " v=" << v;
        ++v;
      }
    }
    EXPECT_GT(v, 1000) << ToString(t);
  }
}

TEST(LinearCombination, SignedCoefficientsAndSlownessGuard) {
  const FrequencySequence a({1, 2, 3}, frequency_source::Empirical{});
  const FrequencySequence b({1, 1, 1, 1}, frequency_source::Empirical{});
  const std::vector<std::pair<std::int64_t, FrequencySequence>> terms = {
      {2, a}, {-3, b}};
  const auto combo = LinearCombination(terms);
  EXPECT_EQ(Entries(combo), (Values{-1, 1, 3}));
  EXPECT_EQ(combo.NonpositiveAt(), (Values{1}));
  EXPECT_TRUE(std::holds_alternative<frequency_source::LinearCombination>(
      combo.source()));
  EXPECT_THROW(LinearCombination({}), Error);
}

TEST(Compare, SelfAgreesAndMismatchIsLocated) {
  const TreeSpec t{2, 1, 3, 1, 2, 2};
  const auto closed = ClosedFormSequence(t, 50);
  EXPECT_TRUE(Compare(closed, closed, 50).agree);
  const auto other = ClosedFormSequence(TreeSpec{2, 0, 3, 1, 2, 2}, 50);
  const auto report = Compare(closed, other, 50);
  EXPECT_FALSE(report.agree);
  // The supernode term first shows at v = j.
  EXPECT_EQ(report.first_mismatch, 3);
  EXPECT_THROW(Compare(closed, other, 51), Error);
}

TEST(Compare, SuperposedIsMixOfHAndConollyExtensions) {
  for (std::int64_t j = 1; j <= 3; ++j) {
    for (std::int64_t p = 1; p <= 3; ++p) {
      for (std::int64_t b = 0; b <= p; ++b) {
        const TreeSpec t = TreeOf(family::Superposed{0, j, b * j, p});
        const auto empirical = EmpiricalFrequency(t, 100000);
        const std::vector<std::pair<std::int64_t, FrequencySequence>> mix = {
            {b, ClosedFormSequence(TreeOf(family::Hsj{0, j}), 2000)},
            {p - b, ClosedFormSequence(TreeOf(family::Rsj{0, j}), 2000)}};
        const auto combo = LinearCombination(mix);
        const auto report =
            Compare(empirical, combo, std::min(empirical.v_max(), combo.v_max()));
        EXPECT_TRUE(report.agree) << j << "," << p << "," << b;
      }
    }
  }
}

TEST(Compare, HigherOrderIsNotAMix) {
  // (alpha, beta, j) = (2, 1, 3): m = (alpha+beta-1)j = 6, p = 2.
  const TreeSpec t = TreeOf(family::HigherOrder{0, 3, 6, 2});
  const auto empirical = EmpiricalFrequency(t, 20000);
  const std::vector<std::pair<std::int64_t, FrequencySequence>> mix = {
      {1, ClosedFormSequence(TreeOf(family::Hsj{0, 3}), 100)},
      {1, ClosedFormSequence(TreeOf(family::Rsj{0, 3}), 100)}};
  const auto report = Compare(empirical, LinearCombination(mix), 100);
  EXPECT_FALSE(report.agree);
  EXPECT_LE(*report.first_mismatch, 100);
}

TEST(FrequencySequence, CsvAndBounds) {
  const FrequencySequence f({3, 1}, frequency_source::Empirical{});
  EXPECT_EQ(f.ToCsv(), "v,phi\n1,3\n2,1\n");
  EXPECT_EQ(f.at(2), 1);
  EXPECT_THROW(f.at(0), Error);
  EXPECT_THROW(f.at(3), Error);
}

}  // namespace
}  // namespace nestrec
