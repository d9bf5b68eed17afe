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
#include <vector>

#include "nestrec/error.hpp"
#include "nestrec/tree.hpp"
#include "oracle.hpp"

namespace nestrec {
namespace {

TreeSpec Spec(std::int64_t k, std::int64_t s, std::int64_t j, std::int64_t c,
              std::int64_t l, std::int64_t x) {
  return TreeSpec{k, s, j, c, l, x};
}

oracle::Tree Mirror(const TreeSpec& t) {
  return {t.arity,    t.supernode_labels, t.leaf_cells,
          t.per_cell, t.last_cell,        t.regular_labels};
}

TEST(TreeSpec, RejectsOutOfRangeFields) {
  EXPECT_THROW(Spec(1, 0, 1, 1, 1, 1).Validate(), Error);
  EXPECT_THROW(Spec(2, -1, 1, 1, 1, 1).Validate(), Error);
  EXPECT_THROW(Spec(2, 0, 0, 1, 1, 1).Validate(), Error);
  EXPECT_THROW(Spec(2, 0, 1, 0, 1, 1).Validate(), Error);
  EXPECT_THROW(Spec(2, 0, 1, 1, 1, -1).Validate(), Error);
  EXPECT_NO_THROW(Spec(2, 0, 1, 1, 1, 0).Validate());
}

TEST(TreeSpec, JsonRoundTrip) {
  const TreeSpec t = Spec(3, 1, 2, 2, 4, 5);
  const nlohmann::json j = t;
  EXPECT_EQ(j.get<TreeSpec>(), t);
  EXPECT_THROW(nlohmann::json::parse(R"({"k":2})").get<TreeSpec>(), Error);
}

TEST(NodeWalker, BinaryOrderStartsWithLeafThenFirstSupernode) {
  const auto nodes = EnumerateNodes(2, 8);
  ASSERT_EQ(nodes.size(), 8u);
  EXPECT_EQ(nodes[0].kind, NodeKind::kLeaf);
  EXPECT_EQ(nodes[1].kind, NodeKind::kSupernode);
  EXPECT_EQ(nodes[1].index, 1u);
  EXPECT_EQ(nodes[2].kind, NodeKind::kLeaf);
  EXPECT_EQ(nodes[3].kind, NodeKind::kSupernode);
  EXPECT_EQ(nodes[4].kind, NodeKind::kRegular);
  EXPECT_TRUE(nodes[4].IsPenultimate());
  EXPECT_EQ(nodes[5].index, 3u);
  EXPECT_EQ(nodes[6].index, 4u);
  EXPECT_EQ(nodes[7].kind, NodeKind::kSupernode);
  EXPECT_EQ(*nodes[0].parent_ordinal, 2u);
  EXPECT_EQ(*nodes[5].parent_ordinal, 5u);
}

TEST(NodeWalker, SupernodeOrdinalsMatchWalk) {
  for (std::int64_t k : {2, 3, 5}) {
    const auto nodes = EnumerateNodes(k, 2000);
    std::uint64_t seen = 0;
    for (const auto& node : nodes) {
      if (node.kind != NodeKind::kSupernode) continue;
      ++seen;
      ASSERT_EQ(SupernodeOrdinal(k, seen), node.ordinal) << "k=" << k;
    }
    EXPECT_GE(seen, 3u);
  }
  EXPECT_FALSE(SupernodeOrdinal(2, 70).has_value());
}

TEST(NodeWalker, AgreesWithRecursiveSkeleton) {
  for (std::int64_t k = 2; k <= 6; ++k) {
    const auto nodes = EnumerateNodes(k, 3000);
    const auto expected = oracle::Skeleton(k, 3000);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const oracle::Kind kind = nodes[i].kind == NodeKind::kLeaf
                                    ? oracle::Kind::kLeaf
                                : nodes[i].kind == NodeKind::kSupernode
                                    ? oracle::Kind::kSupernode
                                    : oracle::Kind::kRegular;
      ASSERT_EQ(kind, expected[i]) << "k=" << k << " ordinal " << i + 1;
    }
  }
}

TEST(NodeWalker, ParentsHaveArityChildren) {
  const auto nodes = EnumerateNodes(3, 1000);
  std::vector<int> children(nodes.size() + 2, 0);
  for (const auto& node : nodes) {
    if (node.parent_ordinal && *node.parent_ordinal <= nodes.size()) {
      ++children[*node.parent_ordinal];
      const auto& parent = nodes[*node.parent_ordinal - 1];
      EXPECT_EQ(parent.level, node.level + 1);
    }
  }
  // Every completed internal node near the front has all k children.
  for (std::size_t ord = 1; ord <= 100; ++ord) {
    if (!nodes[ord - 1].IsLeaf()) {
      EXPECT_EQ(children[ord], 3) << ord;
    }
  }
}

TEST(CellCount, RunningExample) {
  const TreeSpec t = Spec(2, 1, 3, 1, 2, 2);
  EXPECT_EQ(CellCount(t, 16), 9);
  EXPECT_EQ(CellCount(t, 31), 17);
  EXPECT_EQ(InitialConditions(t, 9),
            (std::vector<std::int64_t>{1, 2, 3, 3, 3, 4, 5, 6, 6}));
}

TEST(CellCount, HigherOrderAndSuperposedInstances) {
  EXPECT_EQ(CellCount(Spec(2, 0, 3, 1, 3, 7), 63), 21);
  EXPECT_EQ(CellCount(Spec(2, 0, 3, 2, 5, 3), 82), 24);
}

TEST(CellCount, ZeroAndNegative) {
  EXPECT_EQ(CellCount(Spec(2, 0, 1, 1, 1, 1), 0), 0);
  EXPECT_THROW(CellCount(Spec(2, 0, 1, 1, 1, 1), -1), Error);
}

TEST(CellCount, ConollyTreeGivesConollySequence) {
  // Conolly: 1 2 2 3 4 4 4 5 6 6 7 8 8 8 8 9.
  EXPECT_EQ(InitialConditions(Spec(2, 0, 1, 1, 1, 1), 16),
            (std::vector<std::int64_t>{1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8,
                                       8, 9}));
}

TEST(CellCount, PropertyMatchesLabelByLabelOracle) {
  oracle::Rng rng(20261019);
  for (int trial = 0; trial < 200; ++trial) {
    const TreeSpec t = Spec(rng.Between(2, 5), rng.Between(0, 3),
                            rng.Between(1, 4), rng.Between(1, 3),
                            rng.Between(1, 5), rng.Between(0, 6));
    const std::int64_t n = rng.Between(1, 1500);
    const auto expected = oracle::CellCounts(Mirror(t), n);
    ASSERT_EQ(InitialConditions(t, n), expected) << ToString(t);
    ASSERT_EQ(CellCount(t, n), expected.back()) << ToString(t) << " n=" << n;
  }
}

TEST(CellCount, PropertyNondecreasingByAtMostOne) {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const TreeSpec t = Spec(rng.Between(2, 4), rng.Between(0, 2),
                            rng.Between(1, 3), rng.Between(1, 2),
                            rng.Between(1, 4), rng.Between(0, 4));
    const auto counts = InitialConditions(t, 800);
    EXPECT_EQ(counts.front(), 1);
    for (std::size_t i = 1; i < counts.size(); ++i) {
      const auto step = counts[i] - counts[i - 1];
      ASSERT_TRUE(step == 0 || step == 1) << ToString(t) << " at " << i + 1;
    }
  }
}

TEST(CellCountSplit, SumsToCellCount) {
  oracle::Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const TreeSpec t = Spec(2, rng.Between(0, 2), rng.Between(1, 4),
                            rng.Between(1, 3), rng.Between(1, 3),
                            rng.Between(0, 3));
    const std::int64_t n = rng.Between(1, 500);
    const auto split = CellCountSplit(t, n);
    std::int64_t total = 0;
    for (auto part : split) total += part;
    EXPECT_EQ(total, CellCount(t, n)) << ToString(t) << " n=" << n;
  }
}

TEST(RegularNodesBetweenLeaves, MatchesWalk) {
  EXPECT_EQ(RegularNodesBetweenLeaves(2, 1), 0);
  EXPECT_EQ(RegularNodesBetweenLeaves(2, 4), 2);
  EXPECT_THROW(RegularNodesBetweenLeaves(2, 0), Error);
  for (std::int64_t k : {2, 3}) {
    const auto nodes = EnumerateNodes(k, 4000);
    std::int64_t leaf = 0;
    std::int64_t regular = 0;
    for (const auto& node : nodes) {
      if (node.IsLeaf()) {
        if (leaf > 0) {
          ASSERT_EQ(RegularNodesBetweenLeaves(k, leaf), regular)
              << "k=" << k << " leaf " << leaf;
        }
        ++leaf;
        regular = 0;
      } else if (node.kind == NodeKind::kRegular) {
        ++regular;
      }
    }
  }
}

}  // namespace
}  // namespace nestrec
