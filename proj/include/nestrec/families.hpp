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

// Named recursion families, each paired (where one is known) with the
// labelled tree whose cell-count sequence solves it and the number of
// initial conditions that must follow the tree.

#ifndef NESTREC_FAMILIES_HPP_
#define NESTREC_FAMILIES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nestrec/recursion.hpp"
#include "nestrec/tree.hpp"

namespace nestrec {
namespace family {

// Binary, order 1, parameters s, j and 0 <= m <= j.
struct OrderOne {
  std::int64_t s = 0, j = 1, m = 0;
  friend bool operator==(const OrderOne&, const OrderOne&) = default;
};
// Binary, order p, 0 <= m <= (2p-1)j.
struct HigherOrder {
  std::int64_t s = 0, j = 1, m = 0, p = 1;
  friend bool operator==(const HigherOrder&, const HigherOrder&) = default;
};
// Binary, order p, tree with p labels per cell; 0 <= m <= pj, and
// -p < m < 0 is accepted as exploratory.
struct Superposed {
  std::int64_t s = 0, j = 1, m = 0, p = 1;
  friend bool operator==(const Superposed&, const Superposed&) = default;
};
// k-ary, order p, p-1 <= m <= kp/(k-1) - 1.
struct KaryOrderP {
  std::int64_t k = 3, m = 0, p = 1;
  friend bool operator==(const KaryOrderP&, const KaryOrderP&) = default;
};

struct Conolly {
  friend bool operator==(const Conolly&, const Conolly&) = default;
};
struct H {
  friend bool operator==(const H&, const H&) = default;
};
struct Rsj {
  std::int64_t s = 0, j = 1;
  friend bool operator==(const Rsj&, const Rsj&) = default;
};
struct Hsj {
  std::int64_t s = 0, j = 1;
  friend bool operator==(const Hsj&, const Hsj&) = default;
};
struct AlphaBetaConolly {
  std::int64_t alpha = 0, beta = 1;
  friend bool operator==(const AlphaBetaConolly&, const AlphaBetaConolly&) = default;
};
struct KaryConolly {
  std::int64_t k = 3;
  friend bool operator==(const KaryConolly&, const KaryConolly&) = default;
};
struct KaryH {
  std::int64_t k = 3;
  friend bool operator==(const KaryH&, const KaryH&) = default;
};
struct KaryCeiling {
  std::int64_t k = 3, q = 1;
  friend bool operator==(const KaryCeiling&, const KaryCeiling&) = default;
};

// Evaluate-only families without a known tree.
struct QFamily {
  std::int64_t s = 0, j = 1, q = 0;
  friend bool operator==(const QFamily&, const QFamily&) = default;
};
struct Csjk {
  std::int64_t s = 0, j = 1, k = 3;
  friend bool operator==(const Csjk&, const Csjk&) = default;
};
struct NegGammaCandidate {
  std::int64_t k = 3, gamma = -1, delta = 4;

  // (k-1)*gamma + delta.
  std::int64_t order() const { return (k - 1) * gamma + delta; }
  friend bool operator==(const NegGammaCandidate&, const NegGammaCandidate&) = default;
};

}  // namespace family

using FamilyParams =
    std::variant<family::OrderOne, family::HigherOrder, family::Superposed,
                 family::KaryOrderP, family::Conolly, family::H, family::Rsj,
                 family::Hsj, family::AlphaBetaConolly, family::KaryConolly,
                 family::KaryH, family::KaryCeiling, family::QFamily,
                 family::Csjk, family::NegGammaCandidate>;

// Snake-case family name used in JSON and on the command line.
std::string FamilyName(const FamilyParams& f);
std::string ToString(const FamilyParams& f);

// {"family":"order_one","s":1,"j":3,"m":1}
void to_json(nlohmann::json& j, const FamilyParams& f);
void from_json(const nlohmann::json& j, FamilyParams& f);

enum class Verdict { kOk, kExploratory, kViolation };

struct Validation {
  Verdict verdict = Verdict::kOk;
  std::string detail;  // the violated bound, or why the point is exploratory

  bool ok() const { return verdict == Verdict::kOk; }
  bool usable() const { return verdict != Verdict::kViolation; }
};

const char* ToString(Verdict verdict);

Validation Validate(const FamilyParams& f);

// Offset table of the family's recursion. Throws Error(kValidation) on a
// range violation unless `allow_out_of_range` is set, in which case only a
// well-formed table is required (used by exploratory sweeps).
RecursionSpec RecursionOf(const FamilyParams& f,
                          bool allow_out_of_range = false);

// The four tree-backed families. Classic families resolve to the one that
// covers them; exploratory families resolve to nullopt.
using CoveringFamily = std::variant<family::OrderOne, family::HigherOrder,
                                    family::Superposed, family::KaryOrderP>;
std::optional<CoveringFamily> Covering(const FamilyParams& f);

// Throws Error(kNoTreeKnown) for exploratory families and Error(kValidation)
// for out-of-range parameters.
TreeSpec TreeOf(const FamilyParams& f);

// Number of initial conditions that must follow the tree.
std::int64_t IcLength(const FamilyParams& f);

// TreeOf(f) cell counts of length IcLength(f).
std::vector<std::int64_t> TreeInitialConditions(const FamilyParams& f);

// Initial conditions for exploratory probing: the tree-backed ones when the
// family has a tree, otherwise those of the nearest well-defined tree (the
// clamped-m tree for out-of-range binary families, T_{m,p,k} with m < p-1 for
// the negative-gamma candidate, the k-ary analogue of T_{s,j,0} for C_{s,j,k},
// T_{s,j,0} for the q-family). Returns nullopt when no such tree exists.
struct ProbeSeed {
  TreeSpec tree;
  std::int64_t length = 0;
};
std::optional<ProbeSeed> ProbeSeedOf(const FamilyParams& f);

}  // namespace nestrec

// FamilyParams is a std::variant, so argument-dependent lookup cannot find the
// hooks above.
template <>
struct nlohmann::adl_serializer<nestrec::FamilyParams> {
  static void to_json(json& j, const nestrec::FamilyParams& f) {
    nestrec::to_json(j, f);
  }
  static void from_json(const json& j, nestrec::FamilyParams& f) {
    nestrec::from_json(j, f);
  }
};

#endif  // NESTREC_FAMILIES_HPP_
