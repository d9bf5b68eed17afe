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

#include "nestrec/pruning.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "nestrec/error.hpp"

namespace nestrec {

std::int64_t TreeNode::LabelCount() const {
  std::int64_t total = 0;
  for (const auto& cell : cells) total += static_cast<std::int64_t>(cell.size());
  return total;
}

std::int64_t TreeNode::NonemptyCells() const {
  return std::count_if(cells.begin(), cells.end(),
                       [](const auto& cell) { return !cell.empty(); });
}

std::int64_t LabelledTree::NonemptyCells() const {
  std::int64_t total = 0;
  for (const auto& node : nodes) {
    if (node.node.IsLeaf()) total += node.NonemptyCells();
  }
  return total;
}

namespace {

TreeNode EmptyNode(const TreeSpec& spec, const NodeDescriptor& node) {
  TreeNode out;
  out.node = node;
  out.cells.resize(node.IsLeaf() ? static_cast<std::size_t>(spec.leaf_cells)
                                 : 1u);
  return out;
}

}  // namespace

LabelledTree BuildPrefix(const TreeSpec& spec, std::int64_t n) {
  spec.Validate();
  if (n < 0) Fail(ErrorCode::kArgument, "prefix size n must be >= 0");
  LabelledTree tree;
  tree.spec = spec;
  tree.n = n;
  NodeWalker walker(spec.arity);
  Label next = 1;
  while (next <= n) {
    TreeNode node = EmptyNode(spec, walker.Next());
    for (std::size_t c = 0; c < node.cells.size(); ++c) {
      const std::int64_t capacity =
          node.node.IsLeaf() ? spec.CellCapacity(static_cast<std::int64_t>(c))
                             : LabelsIn(spec, node.node);
      for (std::int64_t i = 0; i < capacity && next <= n; ++i) {
        node.cells[c].push_back(next++);
      }
    }
    tree.nodes.push_back(std::move(node));
  }
  return tree;
}

const char* ToString(PruneStep step) {
  switch (step) {
    case PruneStep::kInitialCorrection:
      return "initial_correction";
    case PruneStep::kDeletion:
      return "deletion";
    case PruneStep::kLifting:
      return "lifting";
    case PruneStep::kEndCorrection:
      return "end_correction";
    case PruneStep::kRelabelling:
      return "relabelling";
  }
  return "?";
}

void to_json(nlohmann::json& j, const LabelMove& move) {
  j = nlohmann::json{{"step", ToString(move.step)},
                     {"label", move.label},
                     {"from", move.from_ordinal}};
  if (move.to_ordinal) {
    j["to"] = *move.to_ordinal;
  } else {
    j["to"] = "removed";
  }
  if (move.new_label) j["new_label"] = *move.new_label;
}

void to_json(nlohmann::json& j, const PruneReport& report) {
  j = nlohmann::json{
      {"n", report.input_n},
      {"removed", report.removed},
      {"expected_removed", report.expected_removed},
      {"result_n", report.result.n},
      {"inserted", report.inserted},
      {"removed_by_step",
       {{"initial_correction", report.removed_initial},
        {"deletion", report.removed_deletion},
        {"end_correction", report.removed_end}}},
      {"lifted", report.lifted},
      {"shortfall", report.shortfall},
      {"overflow", report.overflow},
      {"identity_holds", report.identity_holds},
  };
  if (report.first_difference) {
    j["first_difference"] = *report.first_difference;
  } else {
    j["first_difference"] = nullptr;
  }
  if (!report.moves.empty()) j["moves"] = report.moves;
}

void to_json(nlohmann::json& j, const CorrespondenceReport& report) {
  j = nlohmann::json{{"holds", report.holds},
                     {"first_child_cells", report.first_child_cells},
                     {"pruned_cells", report.pruned_cells}};
  if (report.first_mismatch_ordinal) {
    j["first_mismatch_ordinal"] = *report.first_mismatch_ordinal;
  } else {
    j["first_mismatch_ordinal"] = nullptr;
  }
}

std::int64_t PruneThreshold(const family::OrderOne& f) {
  return 4 * f.j + 2 * f.m + 2 * f.s;
}

std::int64_t PruneThreshold(const family::HigherOrder& f) {
  const std::int64_t x = (2 * f.p - 1) * f.j - f.m;
  return 3 * (f.j + f.m) + x + 2 * f.s + 1;
}

std::int64_t PruneThreshold(const family::Superposed& f) {
  return 5 * f.p * f.j + 3 * f.m + 2 * f.s + 1;
}

std::int64_t PruneThreshold(const family::KaryOrderP& f) {
  return f.k * (f.p + f.m) + f.p - (f.k - 1) * f.m + 1;
}

namespace {

enum class InitialMode { kMoveLargest, kPlaceholders };
enum class Pick { kSmallest, kLargest };

struct Plan {
  std::int64_t min_n = 0;
  InitialMode initial = InitialMode::kPlaceholders;
  std::int64_t initial_count = 0;  // labels moved or placeholders inserted
  std::vector<std::int64_t> thresholds;
  Pick pick = Pick::kSmallest;
  bool cascade = false;
  std::int64_t end_correction = 0;
};

class Pruner {
 public:
  Pruner(const LabelledTree& t, const Plan& plan, const PruneOptions& options)
      : spec_(t.spec), plan_(plan), options_(options) {
    report_.input_n = t.n;
    nodes_ = t.nodes;
    // Leaf 1 precedes its parent, so make sure the first supernode exists.
    NodeWalker walker(spec_.arity);
    for (std::size_t i = 0; i < nodes_.size(); ++i) walker.Next();
    while (nodes_.size() < 2) nodes_.push_back(EmptyNode(spec_, walker.Next()));
    for (const auto& node : nodes_) {
      std::vector<Label> firsts;
      for (const auto& cell : node.cells) {
        firsts.push_back(cell.empty() ? 0 : cell.front());
      }
      first_labels_.push_back(std::move(firsts));
    }
  }

  PruneReport Run() {
    InitialCorrection();
    Deletion();
    Lifting();
    EndCorrection();
    Relabel();
    return std::move(report_);
  }

 private:
  static constexpr std::size_t kFirstSupernode = 1;  // ordinal 2

  void Log(PruneStep step, Label label, std::uint64_t from,
           std::optional<std::uint64_t> to,
           std::optional<Label> new_label = std::nullopt) {
    if (options_.trace) report_.moves.push_back({step, label, from, to, new_label});
  }

  std::uint64_t Ordinal(std::size_t index) const {
    return nodes_[index].node.ordinal;
  }

  void InitialCorrection() {
    auto& supernode = nodes_[kFirstSupernode].cells.front();
    for (Label label : supernode) {
      Log(PruneStep::kInitialCorrection, label, Ordinal(kFirstSupernode),
          std::nullopt);
    }
    report_.removed_initial = static_cast<std::int64_t>(supernode.size());
    supernode.clear();

    std::vector<Label> incoming;
    if (plan_.initial == InitialMode::kPlaceholders) {
      for (std::int64_t i = 1; i <= plan_.initial_count; ++i) {
        incoming.push_back(-i);
        Log(PruneStep::kInitialCorrection, -i, 0, Ordinal(kFirstSupernode));
      }
      report_.inserted = plan_.initial_count;
    } else {
      // Take the largest labels from the end of the tree.
      std::int64_t wanted = plan_.initial_count;
      for (std::size_t i = nodes_.size(); i-- > 0 && wanted > 0;) {
        for (auto cell = nodes_[i].cells.rbegin();
             cell != nodes_[i].cells.rend() && wanted > 0; ++cell) {
          while (!cell->empty() && wanted > 0) {
            incoming.push_back(cell->back());
            Log(PruneStep::kInitialCorrection, cell->back(), Ordinal(i),
                Ordinal(kFirstSupernode));
            cell->pop_back();
            --wanted;
          }
        }
      }
    }
    std::sort(incoming.begin(), incoming.end());
    supernode = std::move(incoming);
  }

  bool Take(std::vector<Label>& cell, std::size_t node_index) {
    if (cell.empty()) return false;
    Label label;
    if (plan_.pick == Pick::kSmallest) {
      label = cell.front();
      cell.erase(cell.begin());
    } else {
      label = cell.back();
      cell.pop_back();
    }
    Log(PruneStep::kDeletion, label, Ordinal(node_index), std::nullopt);
    ++report_.removed_deletion;
    return true;
  }

  void Deletion() {
    for (std::int64_t threshold : plan_.thresholds) {
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        TreeNode& node = nodes_[i];
        if (!node.node.IsLeaf()) continue;
        for (std::size_t c = 0; c < node.cells.size(); ++c) {
          const Label first = first_labels_[i][c];
          if (first == 0 || first > threshold) continue;
          if (Take(node.cells[c], i)) continue;
          if (plan_.cascade) {
            if (Take(node.cells.back(), i)) continue;
            const std::size_t parent = ParentIndex(node);
            if (Take(nodes_[parent].cells.front(), parent)) continue;
          }
          ++report_.shortfall;
        }
      }
    }
  }

  std::size_t ParentIndex(const TreeNode& node) const {
    if (!node.node.parent_ordinal ||
        *node.node.parent_ordinal > nodes_.size()) {
      Fail(ErrorCode::kArgument, "prune: parent of " + ToString(node.node) +
                                     " is not materialized");
    }
    return static_cast<std::size_t>(*node.node.parent_ordinal - 1);
  }

  void Lifting() {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      TreeNode& node = nodes_[i];
      if (!node.node.IsLeaf() || node.LabelCount() == 0) continue;
      const std::size_t parent = ParentIndex(node);
      auto& target = nodes_[parent].cells.front();
      for (auto& cell : node.cells) {
        for (Label label : cell) {
          target.push_back(label);
          Log(PruneStep::kLifting, label, Ordinal(i), Ordinal(parent));
          ++report_.lifted;
        }
        cell.clear();
      }
    }
    for (auto& node : nodes_) {
      if (!node.node.IsLeaf()) {
        std::sort(node.cells.front().begin(), node.cells.front().end());
      }
    }
  }

  void EndCorrection() {
    // After lifting every label sits in a non-leaf node and node order
    // agrees with label order, so the largest real labels sit at the back.
    std::int64_t wanted = plan_.end_correction;
    for (std::size_t i = nodes_.size(); i-- > 0 && wanted > 0;) {
      auto& cell = nodes_[i].cells.front();
      while (!cell.empty() && cell.back() > 0 && wanted > 0) {
        Log(PruneStep::kEndCorrection, cell.back(), Ordinal(i), std::nullopt);
        cell.pop_back();
        --wanted;
        ++report_.removed_end;
      }
    }
  }

  void Relabel() {
    LabelledTree& result = report_.result;
    result.spec = spec_;
    NodeWalker walker(spec_.arity);
    Label next = 1;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].node.IsLeaf()) continue;
      TreeNode node = EmptyNode(spec_, walker.Next());
      const std::vector<Label>& labels = nodes_[i].cells.front();
      std::size_t cell = 0;
      std::int64_t room = node.node.IsLeaf() ? spec_.CellCapacity(0)
                                             : LabelsIn(spec_, node.node);
      for (Label label : labels) {
        while (room == 0 && cell + 1 < node.cells.size()) {
          ++cell;
          room = spec_.CellCapacity(static_cast<std::int64_t>(cell));
        }
        if (room == 0) {
          ++report_.overflow;
        } else {
          --room;
        }
        Log(PruneStep::kRelabelling, label, Ordinal(i), node.node.ordinal,
            next);
        node.cells[cell].push_back(next++);
      }
      result.nodes.push_back(std::move(node));
      report_.origin_ordinal.push_back(Ordinal(i));
    }
    while (!result.nodes.empty() && result.nodes.back().LabelCount() == 0) {
      result.nodes.pop_back();
      report_.origin_ordinal.pop_back();
    }
    result.n = next - 1;
    report_.removed = report_.input_n - result.n;

    const LabelledTree rebuilt = BuildPrefix(spec_, result.n);
    const std::size_t common = std::min(rebuilt.nodes.size(), result.nodes.size());
    for (std::size_t i = 0; i < common; ++i) {
      if (!(rebuilt.nodes[i] == result.nodes[i])) {
        report_.first_difference = result.nodes[i].node.ordinal;
        break;
      }
    }
    if (!report_.first_difference &&
        rebuilt.nodes.size() != result.nodes.size()) {
      report_.first_difference = static_cast<std::uint64_t>(common + 1);
    }
    report_.identity_holds = !report_.first_difference;
  }

  TreeSpec spec_;
  Plan plan_;
  PruneOptions options_;
  std::vector<TreeNode> nodes_;
  std::vector<std::vector<Label>> first_labels_;
  PruneReport report_;
};

void CheckInput(const LabelledTree& t, const FamilyParams& f,
                std::int64_t min_n, const PruneOptions& options) {
  const TreeSpec expected = TreeOf(f);
  if (!(t.spec == expected)) {
    Fail(ErrorCode::kArgument, "prune: tree " + ToString(t.spec) +
                                   " does not belong to " + ToString(f) +
                                   " (expected " + ToString(expected) + ")");
  }
  if (options.enforce_precondition && t.n < min_n) {
    Fail(ErrorCode::kPrecondition,
         "prune of " + ToString(f) + " needs n >= " + std::to_string(min_n) +
             ", got " + std::to_string(t.n));
  }
}

PruneReport RunPlan(const LabelledTree& t, const Plan& plan,
                    const PruneOptions& options) {
  PruneReport report = Pruner(t, plan, options).Run();
  report.expected_removed = t.spec.supernode_labels;
  for (std::int64_t threshold : plan.thresholds) {
    report.expected_removed +=
        CellCount(t.spec, std::max<std::int64_t>(threshold, 0));
  }
  return report;
}

}  // namespace

PruneReport PruneOrder2(const LabelledTree& t, const family::OrderOne& f,
                        const PruneOptions& options) {
  Plan plan;
  plan.min_n = PruneThreshold(f);
  CheckInput(t, f, plan.min_n, options);
  plan.initial = InitialMode::kMoveLargest;
  plan.initial_count = f.j - f.m;
  plan.thresholds = {t.n - f.j};
  plan.pick = Pick::kSmallest;
  return RunPlan(t, plan, options);
}

PruneReport PruneOrderP(const LabelledTree& t, const family::HigherOrder& f,
                        const PruneOptions& options) {
  Plan plan;
  plan.min_n = PruneThreshold(f);
  CheckInput(t, f, plan.min_n, options);
  const std::int64_t x = (2 * f.p - 1) * f.j - f.m;
  plan.initial_count = x;
  for (std::int64_t i = 1; i <= f.p; ++i) {
    plan.thresholds.push_back(t.n - (2 * i - 1) * f.j);
  }
  plan.pick = Pick::kSmallest;
  plan.cascade = true;
  plan.end_correction = x;
  return RunPlan(t, plan, options);
}

PruneReport PruneSuperposed(const LabelledTree& t, const family::Superposed& f,
                            const PruneOptions& options) {
  Plan plan;
  plan.min_n = PruneThreshold(f);
  CheckInput(t, f, plan.min_n, options);
  const std::int64_t x = f.p * f.j - f.m;
  plan.initial_count = x;
  for (std::int64_t i = 1; i <= f.p; ++i) {
    plan.thresholds.push_back(t.n - (2 * i - 1) - f.p * (f.j - 1));
  }
  plan.pick = Pick::kLargest;
  plan.end_correction = x;
  return RunPlan(t, plan, options);
}

PruneReport PruneKary(const LabelledTree& t, const family::KaryOrderP& f,
                      const PruneOptions& options) {
  Plan plan;
  plan.min_n = PruneThreshold(f);
  CheckInput(t, f, plan.min_n, options);
  const std::int64_t x = f.p * f.k - (f.k - 1) * (1 + f.m);
  plan.initial_count = x;
  for (std::int64_t t_off = 1; t_off <= f.p; ++t_off) {
    plan.thresholds.push_back(t.n - t_off);
  }
  plan.pick = Pick::kSmallest;
  plan.end_correction = x;
  return RunPlan(t, plan, options);
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

PruneReport Prune(const FamilyParams& f, std::int64_t n,
                  const PruneOptions& options) {
  const TreeSpec tree = TreeOf(f);
  const CoveringFamily covering = *Covering(f);
  const LabelledTree prefix = BuildPrefix(tree, n);
  return std::visit(
      Overloaded{
          [&](const family::OrderOne& g) {
            return PruneOrder2(prefix, g, options);
          },
          [&](const family::HigherOrder& g) {
            return PruneOrderP(prefix, g, options);
          },
          [&](const family::Superposed& g) {
            return PruneSuperposed(prefix, g, options);
          },
          [&](const family::KaryOrderP& g) {
            return PruneKary(prefix, g, options);
          },
      },
      covering);
}

CorrespondenceReport CheckCorrespondence(const LabelledTree& original,
                                         const PruneReport& report) {
  CorrespondenceReport out;
  // Nonempty cells of each penultimate node's first child in T(n).
  std::unordered_map<std::uint64_t, std::int64_t> first_child;
  for (const auto& node : original.nodes) {
    if (node.node.IsPenultimate()) first_child.emplace(node.node.ordinal, 0);
  }
  for (const auto& node : original.nodes) {
    if (node.node.IsLeaf() && node.node.child_position == 1 &&
        node.node.parent_ordinal) {
      first_child[*node.node.parent_ordinal] = node.NonemptyCells();
      out.first_child_cells += node.NonemptyCells();
    }
  }
  std::unordered_map<std::uint64_t, std::int64_t> pruned;
  for (std::size_t i = 0; i < report.result.nodes.size(); ++i) {
    const TreeNode& node = report.result.nodes[i];
    if (node.node.IsLeaf()) {
      pruned[report.origin_ordinal[i]] = node.NonemptyCells();
      out.pruned_cells += node.NonemptyCells();
    }
  }
  std::vector<std::uint64_t> ordinals;
  for (const auto& [ordinal, cells] : first_child) ordinals.push_back(ordinal);
  for (const auto& [ordinal, cells] : pruned) ordinals.push_back(ordinal);
  std::sort(ordinals.begin(), ordinals.end());
  for (std::uint64_t ordinal : ordinals) {
    const auto a = first_child.find(ordinal);
    const auto b = pruned.find(ordinal);
    const std::int64_t lhs = a == first_child.end() ? 0 : a->second;
    const std::int64_t rhs = b == pruned.end() ? 0 : b->second;
    if (lhs != rhs) {
      out.first_mismatch_ordinal = ordinal;
      break;
    }
  }
  const std::int64_t expected = CellCount(original.spec, report.result.n);
  out.holds = !out.first_mismatch_ordinal &&
              out.first_child_cells == out.pruned_cells &&
              out.pruned_cells == expected;
  return out;
}

CorrespondenceReport LeftLeafCorrespondence(const FamilyParams& f,
                                            std::int64_t n) {
  const LabelledTree original = BuildPrefix(TreeOf(f), n);
  return CheckCorrespondence(original, Prune(f, n));
}

}  // namespace nestrec
