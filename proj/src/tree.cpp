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

#include "nestrec/tree.hpp"

#include <sstream>

#include "nestrec/error.hpp"
#include "nestrec/frequency.hpp"

namespace nestrec {

void TreeSpec::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) Fail(ErrorCode::kArgument, std::string("tree spec: ") + what);
  };
  require(arity >= 2, "arity k must be >= 2");
  require(supernode_labels >= 0, "supernode labels s must be >= 0");
  require(leaf_cells >= 1, "leaf cells j must be >= 1");
  require(per_cell >= 1, "per-cell labels must be >= 1");
  require(last_cell >= 1, "last-cell labels must be >= 1");
  require(regular_labels >= 0, "regular labels must be >= 0");
}

std::int64_t TreeSpec::LeafLabels() const {
  return arith::Add(arith::Mul(per_cell, leaf_cells - 1), last_cell);
}

std::string ToString(const TreeSpec& spec) {
  std::ostringstream out;
  out << "(k=" << spec.arity << ",s=" << spec.supernode_labels
      << ",j=" << spec.leaf_cells << ",c=" << spec.per_cell
      << ",l=" << spec.last_cell << ",x=" << spec.regular_labels << ")";
  return out.str();
}

void to_json(nlohmann::json& j, const TreeSpec& spec) {
  j = nlohmann::json{{"k", spec.arity},
                     {"s", spec.supernode_labels},
                     {"j", spec.leaf_cells},
                     {"per_cell", spec.per_cell},
                     {"last_cell", spec.last_cell},
                     {"regular", spec.regular_labels}};
}

void from_json(const nlohmann::json& j, TreeSpec& spec) {
  try {
    spec.arity = j.at("k").get<std::int64_t>();
    spec.supernode_labels = j.at("s").get<std::int64_t>();
    spec.leaf_cells = j.at("j").get<std::int64_t>();
    spec.per_cell = j.at("per_cell").get<std::int64_t>();
    spec.last_cell = j.at("last_cell").get<std::int64_t>();
    spec.regular_labels = j.at("regular").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("tree spec JSON: ") + e.what());
  }
  spec.Validate();
}

std::string ToString(const NodeDescriptor& node) {
  std::ostringstream out;
  switch (node.kind) {
    case NodeKind::kSupernode:
      out << "Supernode(" << node.index << ")";
      break;
    case NodeKind::kRegular:
      out << "Regular(" << node.level << ")";
      break;
    case NodeKind::kLeaf:
      out << "Leaf(" << node.index << ")";
      break;
  }
  return out.str();
}

std::optional<std::uint64_t> SupernodeOrdinal(std::int64_t arity,
                                              std::uint64_t index) {
  // 1 + k + ... + k^(i-1) nodes precede S(i) in the limit order, i.e. the
  // complete tree hanging below its first child.
  const auto k = static_cast<std::uint64_t>(arity);
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::uint64_t e = 0; e < index; ++e) {
    if (__builtin_add_overflow(total, power, &total)) return std::nullopt;
    if (e + 1 < index && __builtin_mul_overflow(power, k, &power)) {
      return std::nullopt;
    }
  }
  if (__builtin_add_overflow(total, 1u, &total)) return std::nullopt;
  return total;
}

NodeWalker::NodeWalker(std::int64_t arity) : arity_(arity) {
  if (arity < 2) Fail(ErrorCode::kArgument, "arity k must be >= 2");
}

NodeDescriptor NodeWalker::Next() {
  NodeDescriptor out;
  out.ordinal = ++ordinal_;
  if (out.ordinal == 1) {
    out.kind = NodeKind::kLeaf;
    out.index = ++leaves_;
    out.level = 0;
    out.parent_ordinal = SupernodeOrdinal(arity_, 1);
    out.child_position = 1;
    return out;
  }
  if (stack_.empty()) {
    out.kind = NodeKind::kSupernode;
    out.index = ++supernodes_;
    out.level = static_cast<std::int64_t>(out.index);
    out.parent_ordinal = SupernodeOrdinal(arity_, out.index + 1);
    out.child_position = 1;
    // The first child (the previous supernode or leaf 1) is already emitted.
    stack_.push_back({out.ordinal, out.level, 2});
    return out;
  }
  Frame& top = stack_.back();
  const std::uint64_t parent = top.ordinal;
  const std::int64_t position = top.next_child++;
  const std::int64_t level = top.level - 1;
  if (top.next_child > arity_) stack_.pop_back();

  out.parent_ordinal = parent;
  out.child_position = position;
  out.level = level;
  if (level == 0) {
    out.kind = NodeKind::kLeaf;
    out.index = ++leaves_;
  } else {
    out.kind = NodeKind::kRegular;
    stack_.push_back({out.ordinal, level, 1});
  }
  return out;
}

std::vector<NodeDescriptor> EnumerateNodes(std::int64_t arity,
                                           std::uint64_t count) {
  NodeWalker walker(arity);
  std::vector<NodeDescriptor> nodes;
  nodes.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) nodes.push_back(walker.Next());
  return nodes;
}

std::int64_t LabelsIn(const TreeSpec& spec, const NodeDescriptor& node) {
  switch (node.kind) {
    case NodeKind::kSupernode:
      return spec.supernode_labels;
    case NodeKind::kRegular:
      return spec.regular_labels;
    case NodeKind::kLeaf:
      return spec.LeafLabels();
  }
  return 0;
}

namespace {

// Streams the labels 1..n through the skeleton. `on_cell(node, first_label)`
// fires for every leaf cell whose first label is <= n.
template <typename OnCell>
void WalkCells(const TreeSpec& spec, std::int64_t n, OnCell&& on_cell) {
  spec.Validate();
  NodeWalker walker(spec.arity);
  std::int64_t placed = 0;
  while (placed < n) {
    const NodeDescriptor node = walker.Next();
    if (!node.IsLeaf()) {
      placed = arith::Add(placed, LabelsIn(spec, node));
      continue;
    }
    for (std::int64_t cell = 0; cell < spec.leaf_cells && placed < n; ++cell) {
      on_cell(node, placed + 1);
      placed = arith::Add(placed, spec.CellCapacity(cell));
    }
  }
}

}  // namespace

std::int64_t CellCount(const TreeSpec& spec, std::int64_t n) {
  if (n < 0) Fail(ErrorCode::kArgument, "cell count needs n >= 0");
  std::int64_t count = 0;
  WalkCells(spec, n, [&](const NodeDescriptor&, std::int64_t) { ++count; });
  return count;
}

std::vector<std::int64_t> CellCountSplit(const TreeSpec& spec,
                                         std::int64_t n) {
  if (n < 0) Fail(ErrorCode::kArgument, "cell count needs n >= 0");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(spec.arity), 0);
  WalkCells(spec, n, [&](const NodeDescriptor& node, std::int64_t) {
    ++counts[static_cast<std::size_t>(node.child_position - 1)];
  });
  return counts;
}

std::vector<std::int64_t> InitialConditions(const TreeSpec& spec,
                                            std::int64_t t) {
  if (t < 1) Fail(ErrorCode::kArgument, "initial conditions need t >= 1");
  std::vector<std::int64_t> values(static_cast<std::size_t>(t), 0);
  // Mark the first label of each nonempty cell, then prefix-sum.
  WalkCells(spec, t, [&](const NodeDescriptor&, std::int64_t first) {
    ++values[static_cast<std::size_t>(first - 1)];
  });
  std::int64_t running = 0;
  for (auto& v : values) {
    running += v;
    v = running;
  }
  return values;
}

std::int64_t RegularNodesBetweenLeaves(std::int64_t arity, std::int64_t h) {
  if (h < 1) Fail(ErrorCode::kArgument, "leaf index h must be >= 1");
  return Nu(arity, h);
}

}  // namespace nestrec
