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

// The supernode-spined infinite k-ary skeleton and its leaf-cell counting
// function.
//
// The skeleton has no root. Its left spine is made of supernodes S(1), S(2),
// ...; S(1) is the parent of leaves 1..k, and S(i) for i >= 2 has S(i-1) as
// its first child followed by k-1 complete k-ary subtrees of height i-1.
// Labels are inserted in the limit of preorder: the subtree of S(i-1), then
// S(i), then the k-1 hanging subtrees root-first. Consequently S(i) comes
// immediately after leaf number k^(i-1).

#ifndef NESTREC_TREE_HPP_
#define NESTREC_TREE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace nestrec {

// Label capacities of every node kind in a labelled tree.
struct TreeSpec {
  std::int64_t arity = 2;             // k >= 2
  std::int64_t supernode_labels = 0;  // s >= 0
  std::int64_t leaf_cells = 1;        // j >= 1
  std::int64_t per_cell = 1;          // labels in each of the first j-1 cells
  std::int64_t last_cell = 1;         // labels in the last cell
  std::int64_t regular_labels = 0;    // labels in each non-leaf regular node

  // Throws Error(kArgument) when a field is outside its bounds.
  void Validate() const;

  // c*(j-1) + l, the label count of a full leaf.
  std::int64_t LeafLabels() const;

  // Capacity of leaf cell `cell` (0-based).
  std::int64_t CellCapacity(std::int64_t cell) const {
    return cell + 1 == leaf_cells ? last_cell : per_cell;
  }

  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;
};

std::string ToString(const TreeSpec& spec);

// {"k":..,"s":..,"j":..,"per_cell":..,"last_cell":..,"regular":..}
void to_json(nlohmann::json& j, const TreeSpec& spec);
void from_json(const nlohmann::json& j, TreeSpec& spec);

enum class NodeKind { kSupernode, kRegular, kLeaf };

struct NodeDescriptor {
  std::uint64_t ordinal = 0;  // 1-based position in label-insertion order
  NodeKind kind = NodeKind::kLeaf;
  // Supernode index for supernodes, leaf index for leaves, 0 for regular nodes.
  std::uint64_t index = 0;
  // Height above the leaves: leaves 0, penultimate nodes 1, S(i) is at i.
  std::int64_t level = 0;
  // Unset only when the parent ordinal does not fit in 64 bits.
  std::optional<std::uint64_t> parent_ordinal;
  // 1-based position among the parent's children.
  std::int64_t child_position = 1;

  bool IsLeaf() const { return kind == NodeKind::kLeaf; }
  bool IsPenultimate() const { return level == 1; }

  friend bool operator==(const NodeDescriptor&, const NodeDescriptor&) = default;
};

std::string ToString(const NodeDescriptor& node);

// Lazy walker over the infinite skeleton. Memory is O(depth of the current
// hanging subtree), i.e. O(log_k of the number of nodes emitted).
class NodeWalker {
 public:
  explicit NodeWalker(std::int64_t arity);

  NodeDescriptor Next();

  std::int64_t arity() const { return arity_; }

 private:
  struct Frame {
    std::uint64_t ordinal;
    std::int64_t level;
    std::int64_t next_child;
  };

  std::int64_t arity_;
  std::uint64_t ordinal_ = 0;
  std::uint64_t supernodes_ = 0;
  std::uint64_t leaves_ = 0;
  std::vector<Frame> stack_;
};

// Ordinal of supernode S(i): (k^i - 1)/(k - 1) + 1, or nullopt on overflow.
std::optional<std::uint64_t> SupernodeOrdinal(std::int64_t arity,
                                              std::uint64_t index);

std::vector<NodeDescriptor> EnumerateNodes(std::int64_t arity,
                                           std::uint64_t count);

std::int64_t LabelsIn(const TreeSpec& spec, const NodeDescriptor& node);

// C_T(n): number of leaf cells whose first label is <= n.
std::int64_t CellCount(const TreeSpec& spec, std::int64_t n);

// Per child position (index 0 = first child) counts of nonempty leaf cells in
// T(n). The entries sum to CellCount(spec, n).
std::vector<std::int64_t> CellCountSplit(const TreeSpec& spec, std::int64_t n);

// C_T(1), ..., C_T(t) in a single pass.
std::vector<std::int64_t> InitialConditions(const TreeSpec& spec,
                                            std::int64_t t);

// Number of regular (non-supernode, non-leaf) nodes strictly between leaf h
// and leaf h+1, which is the k-adic valuation of h.
std::int64_t RegularNodesBetweenLeaves(std::int64_t arity, std::int64_t h);

}  // namespace nestrec

#endif  // NESTREC_TREE_HPP_
