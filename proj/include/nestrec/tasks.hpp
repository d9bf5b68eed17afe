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

// Whole-task drivers behind the command line: two-engine verification,
// sequence export, parameter sweeps and catalog lookup.

#ifndef NESTREC_TASKS_HPP_
#define NESTREC_TASKS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "nestrec/families.hpp"
#include "nestrec/frequency.hpp"
#include "nestrec/recursion.hpp"
#include "nestrec/tree.hpp"

namespace nestrec {

struct VerifyReport {
  FamilyParams family;
  TreeSpec tree;
  std::int64_t ic_length = 0;
  std::int64_t n_max = 0;
  bool agree = false;
  // First n where the recursion and the cell count part ways, either by
  // value or because the recursion died there.
  std::optional<std::int64_t> first_divergence;
  std::int64_t recursion_value = 0;
  std::int64_t cell_count = 0;
  std::optional<Death> death;
};

// Evaluates the family's recursion from its tree initial conditions and
// compares it with the cell count up to n_max. Throws Error(kNoTreeKnown) for
// evaluate-only families.
VerifyReport RunVerify(const FamilyParams& f, std::int64_t n_max);

void to_json(nlohmann::json& j, const VerifyReport& report);

enum class SequenceFormat { kTable, kCsv, kJson, kBfile };

// "table", "csv", "json" or "bfile"; anything else is Error(kArgument).
SequenceFormat ParseSequenceFormat(const std::string& name);

// Terms are numbered from 1. bfile is "n value" per line, csv is an
// "n,value" header followed by rows. Throws Error(kArgument) when empty.
std::string FormatSequence(std::span<const std::int64_t> values,
                           SequenceFormat format);

struct FrequencyReport {
  TreeSpec tree;
  std::int64_t n = 0;  // cell counts were taken up to n
  FrequencySequence empirical;
  FrequencySequence closed_form;
  FrequencyComparison comparison;
};

// Empirical frequency of C_T(1..n) against the closed form on 1..v_max, or
// on every completed value when v_max <= 0.
FrequencyReport RunFrequency(const TreeSpec& tree, std::int64_t n,
                             std::int64_t v_max);

void to_json(nlohmann::json& j, const FrequencyReport& report);

// A sweep over one family's parameters. Each parameter takes a list of
// values or an inclusive {"from":a,"to":b} range:
//
//   {"family":"order_one","params":{"s":[0],"j":[2],"m":{"from":-2,"to":4}},
//    "n":1000,"prune_samples":5,"prune_span":1000,"prune_n":[168]}
struct ExploreGrid {
  std::string family;
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> params;
  std::int64_t n_max = 1000;
  std::int64_t prune_samples = 0;
  std::int64_t prune_span = 1000;
  std::vector<std::int64_t> prune_n;
};

void from_json(const nlohmann::json& j, ExploreGrid& grid);

struct ExploreRow {
  nlohmann::json params;  // the point's family JSON
  Validation validation;
  // "alive", "dead", "malformed" (offset table rejected) or "no_seed".
  std::string status;
  std::int64_t survived_to = 0;
  std::optional<Death> death;
  std::optional<bool> slow;
  // "match", "mismatch@v", or "n/a" when no conjectured form applies.
  std::string frequency = "n/a";
  // "n/a", or "<holding>/<checked>" followed by the first failing n.
  std::string prune = "n/a";
  std::string note;
};

// Runs every grid point, fanning out over `threads` workers (0 picks the
// hardware count). Rows come back in grid order and depend only on the grid
// and the seed.
std::vector<ExploreRow> RunExplore(const ExploreGrid& grid, std::uint64_t seed,
                                   unsigned threads = 0);

std::string ExploreCsv(const std::vector<ExploreRow>& rows);

struct CatalogMatch {
  std::string id;
  std::int64_t offset = 0;  // 1-based position of the first matching term
};

// Scans an OEIS "stripped" snapshot for entries containing `query` as a
// contiguous run. The query must be a nonempty slow sequence. Throws
// Error(kIo) when the snapshot cannot be read.
std::vector<CatalogMatch> MatchCatalog(std::span<const std::int64_t> query,
                                       const std::string& stripped_path);

}  // namespace nestrec

#endif  // NESTREC_TASKS_HPP_
