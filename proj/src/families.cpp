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

#include "nestrec/families.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "nestrec/error.hpp"

namespace nestrec {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using nlohmann::json;

// Collects failed bounds; the first one wins.
class Bounds {
 public:
  Bounds& Require(bool ok, const std::string& what) {
    if (!ok && violation_.empty()) violation_ = what;
    return *this;
  }
  Bounds& Explore(bool exploratory, const std::string& what) {
    if (exploratory && exploratory_.empty()) exploratory_ = what;
    return *this;
  }
  Validation Result() const {
    if (!violation_.empty()) return {Verdict::kViolation, violation_};
    if (!exploratory_.empty()) return {Verdict::kExploratory, exploratory_};
    return {};
  }

 private:
  std::string violation_;
  std::string exploratory_;
};

std::string Str(std::int64_t v) { return std::to_string(v); }

Validation ValidateSj(std::int64_t s, std::int64_t j) {
  return Bounds()
      .Require(s >= 0, "s >= 0 (s=" + Str(s) + ")")
      .Require(j >= 1, "j >= 1 (j=" + Str(j) + ")")
      .Result();
}

Validation ValidateImpl(const family::OrderOne& f) {
  return Bounds()
      .Require(f.s >= 0, "s >= 0 (s=" + Str(f.s) + ")")
      .Require(f.j >= 1, "j >= 1 (j=" + Str(f.j) + ")")
      .Require(f.m >= 0, "m >= 0 (m=" + Str(f.m) + ")")
      .Require(f.m <= f.j, "m <= j (m=" + Str(f.m) + ", j=" + Str(f.j) + ")")
      .Result();
}

Validation ValidateImpl(const family::HigherOrder& f) {
  const std::int64_t upper = (2 * f.p - 1) * f.j;
  return Bounds()
      .Require(f.s >= 0, "s >= 0 (s=" + Str(f.s) + ")")
      .Require(f.j >= 1, "j >= 1 (j=" + Str(f.j) + ")")
      .Require(f.p >= 1, "p >= 1 (p=" + Str(f.p) + ")")
      .Require(f.m >= 0, "m >= 0 (m=" + Str(f.m) + ")")
      .Require(f.m <= upper,
               "m <= (2p-1)j (m=" + Str(f.m) + ", bound " + Str(upper) + ")")
      .Result();
}

Validation ValidateImpl(const family::Superposed& f) {
  return Bounds()
      .Require(f.s >= 0, "s >= 0 (s=" + Str(f.s) + ")")
      .Require(f.j >= 1, "j >= 1 (j=" + Str(f.j) + ")")
      .Require(f.p >= 1, "p >= 1 (p=" + Str(f.p) + ")")
      .Require(f.m > -f.p, "m > -p (m=" + Str(f.m) + ", p=" + Str(f.p) + ")")
      .Require(f.m <= f.p * f.j,
               "m <= pj (m=" + Str(f.m) + ", bound " + Str(f.p * f.j) + ")")
      .Explore(f.m < 0, "-p < m < 0: tree is defined but no recursion is known")
      .Result();
}

Validation ValidateImpl(const family::KaryOrderP& f) {
  // m <= kp/(k-1) - 1  <=>  (m+1)(k-1) <= kp, which floors the fraction.
  return Bounds()
      .Require(f.k >= 2, "k >= 2 (k=" + Str(f.k) + ")")
      .Require(f.p >= 1, "p >= 1 (p=" + Str(f.p) + ")")
      .Require(f.m >= f.p - 1,
               "m >= p-1 (m=" + Str(f.m) + ", p=" + Str(f.p) + ")")
      .Require((f.m + 1) * (f.k - 1) <= f.k * f.p,
               "m <= kp/(k-1) - 1 (m=" + Str(f.m) + ", k=" + Str(f.k) +
                   ", p=" + Str(f.p) + ")")
      .Explore(f.k == 2, "k = 2 lies outside the proven k >= 3 range")
      .Result();
}

Validation ValidateImpl(const family::Conolly&) { return {}; }
Validation ValidateImpl(const family::H&) { return {}; }
Validation ValidateImpl(const family::Rsj& f) { return ValidateSj(f.s, f.j); }
Validation ValidateImpl(const family::Hsj& f) { return ValidateSj(f.s, f.j); }

Validation ValidateImpl(const family::AlphaBetaConolly& f) {
  return Bounds()
      .Require(f.alpha % 2 == 0, "alpha even (alpha=" + Str(f.alpha) + ")")
      .Require(f.beta >= 0, "beta >= 0 (beta=" + Str(f.beta) + ")")
      .Require(f.alpha + f.beta >= 1,
               "alpha + beta >= 1 (alpha=" + Str(f.alpha) +
                   ", beta=" + Str(f.beta) + ")")
      .Explore(f.alpha < 0, "alpha < 0 maps to a superposed tree with m < 0")
      .Result();
}

Validation ValidateImpl(const family::KaryConolly& f) {
  return Bounds().Require(f.k >= 2, "k >= 2 (k=" + Str(f.k) + ")").Result();
}
Validation ValidateImpl(const family::KaryH& f) {
  return Bounds().Require(f.k >= 2, "k >= 2 (k=" + Str(f.k) + ")").Result();
}
Validation ValidateImpl(const family::KaryCeiling& f) {
  return Bounds()
      .Require(f.k >= 2, "k >= 2 (k=" + Str(f.k) + ")")
      .Require(f.q >= 1, "q >= 1 (q=" + Str(f.q) + ")")
      .Result();
}

Validation ValidateImpl(const family::QFamily& f) {
  return Bounds()
      .Require(f.s >= 0, "s >= 0 (s=" + Str(f.s) + ")")
      .Require(f.j >= 1, "j >= 1 (j=" + Str(f.j) + ")")
      .Require(f.q >= 0, "q >= 0 (q=" + Str(f.q) + ")")
      .Require(f.q <= f.j, "q <= j (q=" + Str(f.q) + ", j=" + Str(f.j) + ")")
      .Result();
}

Validation ValidateImpl(const family::Csjk& f) {
  return Bounds()
      .Require(f.s >= 0, "s >= 0 (s=" + Str(f.s) + ")")
      .Require(f.j >= 1, "j >= 1 (j=" + Str(f.j) + ")")
      .Require(f.k >= 2, "k >= 2 (k=" + Str(f.k) + ")")
      .Result();
}

Validation ValidateImpl(const family::NegGammaCandidate& f) {
  const std::int64_t p = f.order();
  return Bounds()
      .Require(f.k >= 2, "k >= 2 (k=" + Str(f.k) + ")")
      .Require(f.gamma < 0, "gamma < 0 (gamma=" + Str(f.gamma) + ")")
      .Require(f.delta >= 0, "delta >= 0 (delta=" + Str(f.delta) + ")")
      .Require(f.gamma * f.k + f.delta >= 1,
               "gamma*k + delta >= 1 (got " + Str(f.gamma * f.k + f.delta) +
                   ")")
      .Require(p >= 1, "p = (k-1)gamma + delta >= 1 (p=" + Str(p) + ")")
      .Result();
}

RecursionSpec TwoTerm(std::int64_t a1, std::int64_t a2,
                      std::vector<std::int64_t> b1,
                      std::vector<std::int64_t> b2) {
  RecursionSpec spec;
  spec.arity = 2;
  spec.order = static_cast<std::int64_t>(b1.size());
  spec.outer_offsets = {a1, a2};
  spec.inner_offsets = {std::move(b1), std::move(b2)};
  return spec;
}

RecursionSpec RecursionImpl(const family::OrderOne& f) {
  return TwoTerm(f.s, f.s + f.j + f.m, {f.j}, {2 * f.j + f.m});
}

RecursionSpec RecursionImpl(const family::HigherOrder& f) {
  std::vector<std::int64_t> b1, b2;
  for (std::int64_t t = 1; t <= f.p; ++t) {
    b1.push_back((2 * t - 1) * f.j);
    b2.push_back(f.j + f.m + (2 * t - 1) * f.j);
  }
  return TwoTerm(f.s, f.s + f.j + f.m, std::move(b1), std::move(b2));
}

RecursionSpec RecursionImpl(const family::Superposed& f) {
  std::vector<std::int64_t> b1, b2;
  for (std::int64_t t = 1; t <= f.p; ++t) {
    b1.push_back((2 * t - 1) + f.p * (f.j - 1));
    b2.push_back((2 * t - 1) + f.m + f.p * (2 * f.j - 1));
  }
  return TwoTerm(f.s, f.s + f.p * f.j + f.m, std::move(b1), std::move(b2));
}

RecursionSpec RecursionImpl(const family::KaryOrderP& f) {
  RecursionSpec spec;
  spec.arity = f.k;
  spec.order = f.p;
  for (std::int64_t i = 1; i <= f.k; ++i) {
    const std::int64_t shift = (i - 1) * (1 + f.m);
    spec.outer_offsets.push_back(shift);
    std::vector<std::int64_t> row;
    for (std::int64_t t = 1; t <= f.p; ++t) row.push_back(shift + t);
    spec.inner_offsets.push_back(std::move(row));
  }
  return spec;
}

// C(n) = C(n - C(n-1)) + C(n - 1 - C(n-2))
RecursionSpec RecursionImpl(const family::Conolly&) {
  return TwoTerm(0, 1, {1}, {2});
}

// H(n) = H(n - H(n-1)) + H(n - 2 - H(n-3))
RecursionSpec RecursionImpl(const family::H&) { return TwoTerm(0, 2, {1}, {3}); }

RecursionSpec RecursionImpl(const family::Rsj& f) {
  return TwoTerm(f.s, f.s + f.j, {f.j}, {2 * f.j});
}

RecursionSpec RecursionImpl(const family::Hsj& f) {
  return TwoTerm(f.s, f.s + 2 * f.j, {f.j}, {3 * f.j});
}

// R(n) = R(n - sum_i R(n-2i+1)) + R(n-a-b - sum_i R(n-a-b-2i+1)), p = a/2+b.
RecursionSpec RecursionImpl(const family::AlphaBetaConolly& f) {
  const std::int64_t p = f.alpha / 2 + f.beta;
  const std::int64_t shift = f.alpha + f.beta;
  std::vector<std::int64_t> b1, b2;
  for (std::int64_t i = 1; i <= p; ++i) {
    b1.push_back(2 * i - 1);
    b2.push_back(shift + 2 * i - 1);
  }
  return TwoTerm(0, shift, std::move(b1), std::move(b2));
}

// C_k(n) = sum_i C_k(n - i + 1 - C_k(n - i))
RecursionSpec RecursionImpl(const family::KaryConolly& f) {
  RecursionSpec spec;
  spec.arity = f.k;
  spec.order = 1;
  for (std::int64_t i = 1; i <= f.k; ++i) {
    spec.outer_offsets.push_back(i - 1);
    spec.inner_offsets.push_back({i});
  }
  return spec;
}

// H_k(n) = sum_i H_k(n - (i-1)k - sum_{t<k} H_k(n - (i-1)k - t))
RecursionSpec RecursionImpl(const family::KaryH& f) {
  RecursionSpec spec;
  spec.arity = f.k;
  spec.order = f.k - 1;
  for (std::int64_t i = 1; i <= f.k; ++i) {
    spec.outer_offsets.push_back((i - 1) * f.k);
    std::vector<std::int64_t> row;
    for (std::int64_t t = 1; t <= f.k - 1; ++t) row.push_back((i - 1) * f.k + t);
    spec.inner_offsets.push_back(std::move(row));
  }
  return spec;
}

RecursionSpec RecursionImpl(const family::KaryCeiling& f) {
  return RecursionImpl(family::KaryOrderP{f.k, f.k * f.q - 1, (f.k - 1) * f.q});
}

RecursionSpec RecursionImpl(const family::QFamily& f) {
  return TwoTerm(f.s, f.s + f.j, {f.j}, {2 * f.j - f.q});
}

RecursionSpec RecursionImpl(const family::Csjk& f) {
  RecursionSpec spec;
  spec.arity = f.k;
  spec.order = 1;
  for (std::int64_t i = 1; i <= f.k; ++i) {
    spec.outer_offsets.push_back(f.s + (i - 1) * f.j);
    spec.inner_offsets.push_back({i * f.j});
  }
  return spec;
}

// R(n) = sum_i R(n - (i-1)(p+gamma) - R(n-1) - sum_{t<=|gamma|} R(n-1-tk)
//                 - sum_{t<=p-|gamma|-1} R(n-1-|gamma|k-2t))
RecursionSpec RecursionImpl(const family::NegGammaCandidate& f) {
  const std::int64_t p = f.order();
  const std::int64_t g = std::abs(f.gamma);
  std::vector<std::int64_t> row{1};
  for (std::int64_t t = 1; t <= g; ++t) row.push_back(1 + t * f.k);
  for (std::int64_t t = 1; t <= p - g - 1; ++t) {
    row.push_back(1 + g * f.k + 2 * t);
  }
  RecursionSpec spec;
  spec.arity = f.k;
  spec.order = static_cast<std::int64_t>(row.size());
  for (std::int64_t i = 1; i <= f.k; ++i) {
    spec.outer_offsets.push_back((i - 1) * (p + f.gamma));
    spec.inner_offsets.push_back(row);
  }
  return spec;
}

TreeSpec TreeImpl(const family::OrderOne& f) {
  return {2, f.s, f.j, 1, 1 + f.m, f.j - f.m};
}
TreeSpec TreeImpl(const family::HigherOrder& f) {
  return {2, f.s, f.j, 1, 1 + f.m, (2 * f.p - 1) * f.j - f.m};
}
TreeSpec TreeImpl(const family::Superposed& f) {
  return {2, f.s, f.j, f.p, f.p + f.m, f.p * f.j - f.m};
}
TreeSpec TreeImpl(const family::KaryOrderP& f) {
  return {f.k, 0, 1, 1, 1 + f.m, f.p * f.k - (f.k - 1) * (1 + f.m)};
}

std::int64_t IcImpl(const family::OrderOne& f) {
  return 5 * f.j + 3 * f.m + 2 * f.s;
}
std::int64_t IcImpl(const family::HigherOrder& f) {
  const std::int64_t x = (2 * f.p - 1) * f.j - f.m;
  return 4 * (f.j + f.m) + x + 2 * f.s;
}
std::int64_t IcImpl(const family::Superposed& f) {
  return 5 * f.p * f.j + 3 * f.m + 2 * f.s;
}
std::int64_t IcImpl(const family::KaryOrderP& f) {
  return 2 * f.k * (f.p + f.m) + f.p - (f.k - 1) * f.m;
}

// --- JSON -----------------------------------------------------------------

std::int64_t Field(const json& j, const char* key) {
  if (!j.contains(key)) {
    Fail(ErrorCode::kParse, std::string("family JSON is missing \"") + key +
                                "\"");
  }
  return j.at(key).get<std::int64_t>();
}

}  // namespace

std::string FamilyName(const FamilyParams& f) {
  return std::visit(
      Overloaded{
          [](const family::OrderOne&) { return "order_one"; },
          [](const family::HigherOrder&) { return "higher_order"; },
          [](const family::Superposed&) { return "superposed"; },
          [](const family::KaryOrderP&) { return "kary"; },
          [](const family::Conolly&) { return "conolly"; },
          [](const family::H&) { return "h"; },
          [](const family::Rsj&) { return "r_sj"; },
          [](const family::Hsj&) { return "h_sj"; },
          [](const family::AlphaBetaConolly&) { return "alpha_beta"; },
          [](const family::KaryConolly&) { return "kary_conolly"; },
          [](const family::KaryH&) { return "kary_h"; },
          [](const family::KaryCeiling&) { return "kary_ceiling"; },
          [](const family::QFamily&) { return "q_family"; },
          [](const family::Csjk&) { return "csjk"; },
          [](const family::NegGammaCandidate&) { return "neg_gamma"; },
      },
      f);
}

void to_json(json& j, const FamilyParams& f) {
  j = json{{"family", FamilyName(f)}};
  std::visit(
      Overloaded{
          [&](const family::OrderOne& g) {
            j["s"] = g.s, j["j"] = g.j, j["m"] = g.m;
          },
          [&](const family::HigherOrder& g) {
            j["s"] = g.s, j["j"] = g.j, j["m"] = g.m, j["p"] = g.p;
          },
          [&](const family::Superposed& g) {
            j["s"] = g.s, j["j"] = g.j, j["m"] = g.m, j["p"] = g.p;
          },
          [&](const family::KaryOrderP& g) {
            j["k"] = g.k, j["m"] = g.m, j["p"] = g.p;
          },
          [&](const family::Conolly&) {},
          [&](const family::H&) {},
          [&](const family::Rsj& g) { j["s"] = g.s, j["j"] = g.j; },
          [&](const family::Hsj& g) { j["s"] = g.s, j["j"] = g.j; },
          [&](const family::AlphaBetaConolly& g) {
            j["alpha"] = g.alpha, j["beta"] = g.beta;
          },
          [&](const family::KaryConolly& g) { j["k"] = g.k; },
          [&](const family::KaryH& g) { j["k"] = g.k; },
          [&](const family::KaryCeiling& g) { j["k"] = g.k, j["q"] = g.q; },
          [&](const family::QFamily& g) {
            j["s"] = g.s, j["j"] = g.j, j["q"] = g.q;
          },
          [&](const family::Csjk& g) {
            j["s"] = g.s, j["j"] = g.j, j["k"] = g.k;
          },
          [&](const family::NegGammaCandidate& g) {
            j["k"] = g.k, j["gamma"] = g.gamma, j["delta"] = g.delta;
          },
      },
      f);
}

void from_json(const json& j, FamilyParams& f) {
  try {
    if (!j.is_object() || !j.contains("family")) {
      Fail(ErrorCode::kParse, "family JSON needs a \"family\" name");
    }
    const auto name = j.at("family").get<std::string>();
    if (name == "order_one") {
      f = family::OrderOne{Field(j, "s"), Field(j, "j"), Field(j, "m")};
    } else if (name == "higher_order") {
      f = family::HigherOrder{Field(j, "s"), Field(j, "j"), Field(j, "m"),
                              Field(j, "p")};
    } else if (name == "superposed") {
      f = family::Superposed{Field(j, "s"), Field(j, "j"), Field(j, "m"),
                             Field(j, "p")};
    } else if (name == "kary") {
      f = family::KaryOrderP{Field(j, "k"), Field(j, "m"), Field(j, "p")};
    } else if (name == "conolly") {
      f = family::Conolly{};
    } else if (name == "h") {
      f = family::H{};
    } else if (name == "r_sj") {
      f = family::Rsj{Field(j, "s"), Field(j, "j")};
    } else if (name == "h_sj") {
      f = family::Hsj{Field(j, "s"), Field(j, "j")};
    } else if (name == "alpha_beta") {
      f = family::AlphaBetaConolly{Field(j, "alpha"), Field(j, "beta")};
    } else if (name == "kary_conolly") {
      f = family::KaryConolly{Field(j, "k")};
    } else if (name == "kary_h") {
      f = family::KaryH{Field(j, "k")};
    } else if (name == "kary_ceiling") {
      f = family::KaryCeiling{Field(j, "k"), Field(j, "q")};
    } else if (name == "q_family") {
      f = family::QFamily{Field(j, "s"), Field(j, "j"), Field(j, "q")};
    } else if (name == "csjk") {
      f = family::Csjk{Field(j, "s"), Field(j, "j"), Field(j, "k")};
    } else if (name == "neg_gamma") {
      f = family::NegGammaCandidate{Field(j, "k"), Field(j, "gamma"),
                                    Field(j, "delta")};
    } else {
      Fail(ErrorCode::kParse, "unknown family \"" + name + "\"");
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("family JSON: ") + e.what());
  }
}

std::string ToString(const FamilyParams& f) {
  json j = f;
  std::ostringstream out;
  out << FamilyName(f) << "(";
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    if (key == "family") continue;
    out << (first ? "" : ",") << key << "=" << value.get<std::int64_t>();
    first = false;
  }
  out << ")";
  return out.str();
}

const char* ToString(Verdict verdict) {
  switch (verdict) {
    case Verdict::kOk:
      return "ok";
    case Verdict::kExploratory:
      return "exploratory";
    case Verdict::kViolation:
      return "violation";
  }
  return "?";
}

Validation Validate(const FamilyParams& f) {
  return std::visit([](const auto& g) { return ValidateImpl(g); }, f);
}

RecursionSpec RecursionOf(const FamilyParams& f, bool allow_out_of_range) {
  const Validation v = Validate(f);
  if (!v.usable() && !allow_out_of_range) {
    Fail(ErrorCode::kValidation, ToString(f) + ": violates " + v.detail);
  }
  RecursionSpec spec =
      std::visit([](const auto& g) { return RecursionImpl(g); }, f);
  spec.Validate();
  return spec;
}

std::optional<CoveringFamily> Covering(const FamilyParams& f) {
  using R = std::optional<CoveringFamily>;
  return std::visit(
      Overloaded{
          [](const family::OrderOne& g) -> R { return g; },
          [](const family::HigherOrder& g) -> R { return g; },
          [](const family::Superposed& g) -> R { return g; },
          [](const family::KaryOrderP& g) -> R { return g; },
          [](const family::Conolly&) -> R { return family::OrderOne{0, 1, 0}; },
          [](const family::H&) -> R { return family::OrderOne{0, 1, 1}; },
          [](const family::Rsj& g) -> R {
            return family::OrderOne{g.s, g.j, 0};
          },
          [](const family::Hsj& g) -> R {
            return family::OrderOne{g.s, g.j, g.j};
          },
          [](const family::AlphaBetaConolly& g) -> R {
            return family::Superposed{0, 1, g.alpha / 2, g.alpha / 2 + g.beta};
          },
          [](const family::KaryConolly& g) -> R {
            return family::KaryOrderP{g.k, 0, 1};
          },
          [](const family::KaryH& g) -> R {
            return family::KaryOrderP{g.k, g.k - 1, g.k - 1};
          },
          [](const family::KaryCeiling& g) -> R {
            return family::KaryOrderP{g.k, g.k * g.q - 1, (g.k - 1) * g.q};
          },
          [](const family::QFamily&) -> R { return std::nullopt; },
          [](const family::Csjk&) -> R { return std::nullopt; },
          [](const family::NegGammaCandidate&) -> R { return std::nullopt; },
      },
      f);
}

namespace {

CoveringFamily RequireTree(const FamilyParams& f) {
  const Validation v = Validate(f);
  if (!v.usable()) {
    Fail(ErrorCode::kValidation, ToString(f) + ": violates " + v.detail);
  }
  auto covering = Covering(f);
  if (!covering) {
    Fail(ErrorCode::kNoTreeKnown,
         ToString(f) + " has no known tree; it can only be evaluated");
  }
  return *covering;
}

}  // namespace

TreeSpec TreeOf(const FamilyParams& f) {
  const CoveringFamily covering = RequireTree(f);
  TreeSpec tree =
      std::visit([](const auto& g) { return TreeImpl(g); }, covering);
  tree.Validate();
  return tree;
}

std::int64_t IcLength(const FamilyParams& f) {
  const CoveringFamily covering = RequireTree(f);
  return std::visit([](const auto& g) { return IcImpl(g); }, covering);
}

std::vector<std::int64_t> TreeInitialConditions(const FamilyParams& f) {
  return InitialConditions(TreeOf(f), IcLength(f));
}

namespace {

bool WellDefined(const TreeSpec& tree) {
  return tree.arity >= 2 && tree.supernode_labels >= 0 &&
         tree.leaf_cells >= 1 && tree.per_cell >= 1 && tree.last_cell >= 1 &&
         tree.regular_labels >= 0;
}

std::optional<ProbeSeed> Seed(const TreeSpec& tree, std::int64_t length) {
  if (!WellDefined(tree) || length < 1) return std::nullopt;
  return ProbeSeed{tree, length};
}

}  // namespace

std::optional<ProbeSeed> ProbeSeedOf(const FamilyParams& f) {
  using R = std::optional<ProbeSeed>;
  if (Validate(f).usable() && Covering(f)) {
    return ProbeSeed{TreeOf(f), IcLength(f)};
  }
  return std::visit(
      Overloaded{
          [](const family::OrderOne& g) -> R {
            family::OrderOne c = g;
            c.m = std::clamp<std::int64_t>(g.m, 0, std::max<std::int64_t>(g.j, 0));
            return Seed(TreeImpl(c), IcImpl(c));
          },
          [](const family::HigherOrder& g) -> R {
            family::HigherOrder c = g;
            c.m = std::clamp<std::int64_t>(
                g.m, 0, std::max<std::int64_t>((2 * g.p - 1) * g.j, 0));
            return Seed(TreeImpl(c), IcImpl(c));
          },
          [](const family::Superposed& g) -> R {
            family::Superposed c = g;
            c.m = std::clamp<std::int64_t>(
                g.m, std::min<std::int64_t>(1 - g.p, 0),
                std::max<std::int64_t>(g.p * g.j, 0));
            return Seed(TreeImpl(c), IcImpl(c));
          },
          [](const family::KaryOrderP& g) -> R {
            // The tree stays well defined below m = p-1 as long as x >= 0.
            if (auto seed = Seed(TreeImpl(g), IcImpl(g))) return seed;
            family::KaryOrderP c = g;
            c.m = std::max<std::int64_t>(g.m, g.p - 1);
            while (c.m > 0 && (c.m + 1) * (c.k - 1) > c.k * c.p) --c.m;
            return Seed(TreeImpl(c), IcImpl(c));
          },
          [](const family::QFamily& g) -> R {
            const family::OrderOne base{g.s, g.j, 0};
            return Seed(TreeImpl(base), IcImpl(base));
          },
          [](const family::Csjk& g) -> R {
            // Through the last child of the second penultimate node.
            return Seed(TreeSpec{g.k, g.s, g.j, 1, 1, g.j},
                        2 * g.k * g.j + g.j + 2 * g.s);
          },
          [](const family::NegGammaCandidate& g) -> R {
            const family::KaryOrderP tree{g.k, g.order() - 1 + g.gamma,
                                          g.order()};
            return Seed(TreeImpl(tree), IcImpl(tree));
          },
          [](const auto&) -> R { return std::nullopt; },
      },
      f);
}

}  // namespace nestrec
