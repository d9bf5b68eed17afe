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

// Finite labelled prefixes T(n) and the pruning transformations that shrink
// T(n) onto a smaller prefix of the same tree.
//
// Every prune runs the same five phases: an initial correction at the first
// supernode, threshold-driven deletion from leaf cells, lifting of surviving
// leaf labels into their parents, an optional end correction, and
// relabelling of the leafless tree as a fresh prefix. The variants differ in
// thresholds, in which label a cell gives up, and in how the initial
// correction is balanced.

#ifndef NESTREC_PRUNING_HPP_
#define NESTREC_PRUNING_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nestrec/families.hpp"
#include "nestrec/tree.hpp"

namespace nestrec {

// Positive labels are real; negative ones are placeholders inserted by an
// initial correction and never compared by value against real labels.
using Label = std::int64_t;

struct TreeNode {
  NodeDescriptor node;
  // Leaves carry leaf_cells cells; every other node carries exactly one.
  std::vector<std::vector<Label>> cells;

  std::int64_t LabelCount() const;
  std::int64_t NonemptyCells() const;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct LabelledTree {
  TreeSpec spec;
  std::vector<TreeNode> nodes;  // insertion order, ordinals 1..nodes.size()
  std::int64_t n = 0;

  std::int64_t NonemptyCells() const;
};

// Materializes T(n): every node up to the last one holding a label.
LabelledTree BuildPrefix(const TreeSpec& spec, std::int64_t n);

enum class PruneStep {
  kInitialCorrection,
  kDeletion,
  kLifting,
  kEndCorrection,
  kRelabelling,
};

const char* ToString(PruneStep step);

struct LabelMove {
  PruneStep step = PruneStep::kDeletion;
  Label label = 0;
  std::uint64_t from_ordinal = 0;  // 0 for a freshly inserted placeholder
  std::optional<std::uint64_t> to_ordinal;  // nullopt when removed
  std::optional<Label> new_label;           // set by relabelling only
};

struct PruneOptions {
  // When false, inputs below the precondition are pruned anyway and the
  // outcome is reported instead of refused.
  bool enforce_precondition = true;
  // Record every label movement in PruneReport::moves.
  bool trace = false;
};

struct PruneReport {
  std::int64_t input_n = 0;
  std::int64_t removed = 0;           // input_n - result.n
  std::int64_t expected_removed = 0;  // from the cell-count formula
  std::int64_t inserted = 0;          // placeholders added, then offset
  // Labels removed per phase; sums to removed + inserted.
  std::int64_t removed_initial = 0;
  std::int64_t removed_deletion = 0;
  std::int64_t removed_end = 0;
  std::int64_t lifted = 0;
  // Deletion requests that found no label to take.
  std::int64_t shortfall = 0;
  // Relabelled labels that did not fit the capacity of their new node.
  std::int64_t overflow = 0;
  std::vector<LabelMove> moves;  // empty unless traced
  LabelledTree result;
  // origin_ordinal[i] is the T(n) ordinal of result.nodes[i].
  std::vector<std::uint64_t> origin_ordinal;
  // result equals BuildPrefix(spec, input_n - removed) node for node.
  bool identity_holds = false;
  // First result ordinal that differs from the rebuilt prefix.
  std::optional<std::uint64_t> first_difference;
};

void to_json(nlohmann::json& j, const LabelMove& move);
void to_json(nlohmann::json& j, const PruneReport& report);

// Smallest n each prune accepts.
std::int64_t PruneThreshold(const family::OrderOne& f);
std::int64_t PruneThreshold(const family::HigherOrder& f);
std::int64_t PruneThreshold(const family::Superposed& f);
std::int64_t PruneThreshold(const family::KaryOrderP& f);

// Binary order 1: the j-m largest labels replace the first supernode's
// labels, one cell label goes per cell nonempty at n-j, no end correction.
PruneReport PruneOrder2(const LabelledTree& t, const family::OrderOne& f,
                        const PruneOptions& options = {});

// Binary order p: p deletion rounds at n-(2i-1)j with a cascade from the
// cell to the leaf's last cell to the parent.
PruneReport PruneOrderP(const LabelledTree& t, const family::HigherOrder& f,
                        const PruneOptions& options = {});

// Binary with p labels per cell: rounds at n-(2i-1)-p(j-1), each taking the
// largest label of the cell.
PruneReport PruneSuperposed(const LabelledTree& t, const family::Superposed& f,
                            const PruneOptions& options = {});

// k-ary: rounds at n-t for t = 1..p.
PruneReport PruneKary(const LabelledTree& t, const family::KaryOrderP& f,
                      const PruneOptions& options = {});

// Builds T(n) for the family's tree and runs the matching prune. Classic
// families use the prune of their covering family.
PruneReport Prune(const FamilyParams& f, std::int64_t n,
                  const PruneOptions& options = {});

struct CorrespondenceReport {
  bool holds = false;
  // First-child cells of T(n) against C_T(n - removed).
  std::int64_t first_child_cells = 0;
  std::int64_t pruned_cells = 0;
  // First penultimate node of T(n) whose pruned cell count differs from its
  // first child's.
  std::optional<std::uint64_t> first_mismatch_ordinal;
};

// Compares, for every penultimate node of `original`, its nonempty cells in
// the pruned tree with the nonempty cells of its first child in `original`.
CorrespondenceReport CheckCorrespondence(const LabelledTree& original,
                                         const PruneReport& report);

// Prunes T(n) for the family and checks the correspondence. Refuses, as the
// prune does, below the precondition.
CorrespondenceReport LeftLeafCorrespondence(const FamilyParams& f,
                                            std::int64_t n);

void to_json(nlohmann::json& j, const CorrespondenceReport& report);

}  // namespace nestrec

#endif  // NESTREC_PRUNING_HPP_
