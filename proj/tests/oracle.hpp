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

// Slow, obviously-correct reference implementations for the tests. Nothing
// here shares code with the library.

#ifndef NESTREC_TESTS_ORACLE_HPP_
#define NESTREC_TESTS_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

// SplitMix64. Property tests draw all their inputs from one of these so a
// failing case can be replayed from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [lo, hi].
  std::int64_t Between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(Next() % span);
  }

 private:
  std::uint64_t state_;
};

enum class Kind { kSupernode, kRegular, kLeaf };

inline void CompleteSubtree(std::int64_t k, std::int64_t height,
                            std::vector<Kind>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (height == 0) {
    out.push_back(Kind::kLeaf);
    return;
  }
  out.push_back(Kind::kRegular);
  for (std::int64_t c = 0; c < k; ++c) CompleteSubtree(k, height - 1, out, limit);
}

// Node kinds in label order, built top-down: everything up to supernode i is
// the tree under its first child, followed by the supernode itself and then
// its other k-1 children as complete subtrees in preorder.
inline std::vector<Kind> Skeleton(std::int64_t k, std::size_t limit) {
  std::vector<Kind> out{Kind::kLeaf};
  for (std::int64_t level = 1; out.size() < limit; ++level) {
    out.push_back(Kind::kSupernode);
    for (std::int64_t c = 1; c < k; ++c) {
      CompleteSubtree(k, level - 1, out, limit);
    }
  }
  out.resize(limit);
  return out;
}

struct Tree {
  std::int64_t k, s, j, c, l, x;
};

// C_T(1..n) by placing every label one at a time.
inline std::vector<std::int64_t> CellCounts(const Tree& t, std::int64_t n) {
  std::vector<std::int64_t> counts;
  counts.reserve(static_cast<std::size_t>(n));
  std::size_t want = 64;
  std::vector<Kind> nodes = Skeleton(t.k, want);
  std::int64_t cells = 0;
  std::size_t at = 0;
  while (static_cast<std::int64_t>(counts.size()) < n) {
    if (at == nodes.size()) {
      want *= 2;
      nodes = Skeleton(t.k, want);
    }
    const Kind kind = nodes[at++];
    if (kind == Kind::kSupernode || kind == Kind::kRegular) {
      const std::int64_t labels = kind == Kind::kSupernode ? t.s : t.x;
      for (std::int64_t i = 0; i < labels; ++i) counts.push_back(cells);
      continue;
    }
    for (std::int64_t cell = 0; cell < t.j; ++cell) {
      const std::int64_t cap = cell + 1 == t.j ? t.l : t.c;
      for (std::int64_t i = 0; i < cap; ++i) {
        if (i == 0) ++cells;
        counts.push_back(cells);
      }
    }
  }
  counts.resize(static_cast<std::size_t>(n));
  return counts;
}

// Memo-table evaluation of R(n) = sum_i R(n - a_i - sum_t R(n - b_it)).
// nullopt once any term would be undefined.
inline std::optional<std::vector<std::int64_t>> Evaluate(
    const std::vector<std::int64_t>& a,
    const std::vector<std::vector<std::int64_t>>& b,
    const std::vector<std::int64_t>& ic, std::int64_t n) {
  std::map<std::int64_t, std::int64_t> r;
  for (std::size_t i = 0; i < ic.size(); ++i) {
    r[static_cast<std::int64_t>(i) + 1] = ic[i];
  }
  for (std::int64_t m = static_cast<std::int64_t>(ic.size()) + 1; m <= n; ++m) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::int64_t arg = m - a[i];
      for (std::int64_t off : b[i]) {
        const auto it = r.find(m - off);
        if (it == r.end()) return std::nullopt;
        arg -= it->second;
      }
      const auto it = r.find(arg);
      if (it == r.end()) return std::nullopt;
      total += it->second;
    }
    r[m] = total;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; m <= n; ++m) out.push_back(r.at(m));
  return out;
}

// How often each value 1..max occurs in a nondecreasing sequence.
inline std::vector<std::int64_t> Occurrences(
    const std::vector<std::int64_t>& values, std::int64_t max) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(max), 0);
  for (std::int64_t v : values) {
    if (v >= 1 && v <= max) ++out[static_cast<std::size_t>(v - 1)];
  }
  return out;
}

}  // namespace oracle

#endif  // NESTREC_TESTS_ORACLE_HPP_
