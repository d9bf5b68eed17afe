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

#include "nestrec/nestrec.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "nestrec/error.hpp"
#include "nestrec/families.hpp"
#include "nestrec/pruning.hpp"
#include "nestrec/recursion.hpp"
#include "nestrec/tasks.hpp"
#include "nestrec/tree.hpp"

struct nr_family {
  nestrec::FamilyParams params;
};
struct nr_recursion {
  nestrec::RecursionSpec spec;
};
struct nr_tree {
  nestrec::TreeSpec spec;
};
struct nr_sequence {
  std::vector<std::int64_t> values;
};

namespace {

using nestrec::ErrorCode;
using nestrec::Fail;
using nlohmann::json;

thread_local std::string last_error;

nr_status StatusOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kArgument:
      return NR_ERR_ARGUMENT;
    case ErrorCode::kOverflow:
      return NR_ERR_OVERFLOW;
    case ErrorCode::kValidation:
      return NR_ERR_VALIDATION;
    case ErrorCode::kNoTreeKnown:
      return NR_ERR_NO_TREE;
    case ErrorCode::kPrecondition:
      return NR_ERR_PRECONDITION;
    case ErrorCode::kParse:
      return NR_ERR_PARSE;
    case ErrorCode::kIo:
      return NR_ERR_IO;
  }
  return NR_ERR_INTERNAL;
}

template <typename Body>
nr_status Guard(Body&& body) {
  try {
    body();
    return NR_OK;
  } catch (const nestrec::Error& e) {
    last_error = e.what();
    return StatusOf(e.code());
  } catch (const json::exception& e) {
    last_error = e.what();
    return NR_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NR_ERR_INTERNAL;
  }
}

template <typename T>
void Require(T* ptr, const char* name) {
  if (ptr == nullptr) {
    Fail(ErrorCode::kArgument, std::string(name) + " must not be NULL");
  }
}

char* Copy(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

json Parse(const char* text) {
  Require(text, "json");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
}

nr_death_reason ReasonOf(nestrec::DeathReason reason) {
  switch (reason) {
    case nestrec::DeathReason::kInnerIndexNonpositive:
      return NR_DEATH_INNER_NONPOSITIVE;
    case nestrec::DeathReason::kOuterIndexNonpositive:
      return NR_DEATH_OUTER_NONPOSITIVE;
    case nestrec::DeathReason::kOuterIndexNotYetDefined:
      return NR_DEATH_OUTER_NOT_YET_DEFINED;
  }
  return NR_ALIVE;
}

json NodeJson(const nestrec::TreeNode& node) {
  json j{{"ordinal", node.node.ordinal},
         {"kind", nestrec::ToString(node.node)},
         {"level", node.node.level},
         {"child_position", node.node.child_position}};
  if (node.node.parent_ordinal) j["parent"] = *node.node.parent_ordinal;
  if (node.node.IsLeaf()) {
    j["cells"] = node.cells;
  } else {
    j["labels"] = node.cells.front();
  }
  return j;
}

}  // namespace

extern "C" {

const char* nr_version(void) { return "0.1.0"; }

const char* nr_last_error(void) { return last_error.c_str(); }

const char* nr_status_name(nr_status status) {
  switch (status) {
    case NR_OK:
      return "ok";
    case NR_ERR_ARGUMENT:
      return "argument";
    case NR_ERR_OVERFLOW:
      return "overflow";
    case NR_ERR_VALIDATION:
      return "validation";
    case NR_ERR_NO_TREE:
      return "no_tree_known";
    case NR_ERR_PRECONDITION:
      return "precondition";
    case NR_ERR_PARSE:
      return "parse";
    case NR_ERR_IO:
      return "io";
    case NR_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* nr_death_reason_name(nr_death_reason reason) {
  switch (reason) {
    case NR_ALIVE:
      return "Alive";
    case NR_DEATH_INNER_NONPOSITIVE:
      return nestrec::ToString(nestrec::DeathReason::kInnerIndexNonpositive);
    case NR_DEATH_OUTER_NONPOSITIVE:
      return nestrec::ToString(nestrec::DeathReason::kOuterIndexNonpositive);
    case NR_DEATH_OUTER_NOT_YET_DEFINED:
      return nestrec::ToString(nestrec::DeathReason::kOuterIndexNotYetDefined);
  }
  return "unknown";
}

void nr_string_free(char* s) { std::free(s); }

// ---- sequences ------------------------------------------------------------

nr_status nr_sequence_create(const int64_t* values, size_t length,
                             nr_sequence** out) {
  return Guard([&] {
    Require(out, "out");
    if (length > 0) Require(values, "values");
    auto seq = std::make_unique<nr_sequence>();
    if (length > 0) seq->values.assign(values, values + length);
    *out = seq.release();
  });
}

void nr_sequence_free(nr_sequence* seq) { delete seq; }

size_t nr_sequence_length(const nr_sequence* seq) {
  return seq == nullptr ? 0 : seq->values.size();
}

const int64_t* nr_sequence_data(const nr_sequence* seq) {
  return seq == nullptr ? nullptr : seq->values.data();
}

nr_status nr_sequence_is_slow(const nr_sequence* seq, int* slow,
                              int64_t* first_violation) {
  return Guard([&] {
    Require(seq, "seq");
    Require(slow, "slow");
    if (seq->values.empty()) {
      Fail(ErrorCode::kArgument, "slowness of an empty sequence");
    }
    const auto verdict = nestrec::IsSlow(seq->values);
    *slow = verdict.slow ? 1 : 0;
    if (first_violation != nullptr) {
      *first_violation = verdict.first_violation.value_or(0);
    }
  });
}

nr_status nr_sequence_format(const nr_sequence* seq, const char* format,
                             char** out) {
  return Guard([&] {
    Require(seq, "seq");
    Require(format, "format");
    Require(out, "out");
    *out = Copy(nestrec::FormatSequence(
        seq->values, nestrec::ParseSequenceFormat(format)));
  });
}

nr_status nr_sequence_frequency_csv(const nr_sequence* seq, char** out) {
  return Guard([&] {
    Require(seq, "seq");
    Require(out, "out");
    *out = Copy(nestrec::FrequencyOf(seq->values).ToCsv());
  });
}

// ---- families -------------------------------------------------------------

nr_status nr_family_parse(const char* text, nr_family** out) {
  return Guard([&] {
    Require(out, "out");
    auto family = std::make_unique<nr_family>();
    family->params = Parse(text).get<nestrec::FamilyParams>();
    *out = family.release();
  });
}

void nr_family_free(nr_family* family) { delete family; }

nr_status nr_family_to_json(const nr_family* family, char** out) {
  return Guard([&] {
    Require(family, "family");
    Require(out, "out");
    *out = Copy(json(family->params).dump());
  });
}

nr_status nr_family_validate(const nr_family* family, nr_verdict* verdict,
                             char** detail) {
  return Guard([&] {
    Require(family, "family");
    Require(verdict, "verdict");
    const nestrec::Validation v = nestrec::Validate(family->params);
    char* text = detail != nullptr ? Copy(v.detail) : nullptr;
    *verdict = static_cast<nr_verdict>(v.verdict);
    if (detail != nullptr) *detail = text;
  });
}

nr_status nr_family_recursion(const nr_family* family, int allow_out_of_range,
                              nr_recursion** out) {
  return Guard([&] {
    Require(family, "family");
    Require(out, "out");
    auto rec = std::make_unique<nr_recursion>();
    rec->spec = nestrec::RecursionOf(family->params, allow_out_of_range != 0);
    *out = rec.release();
  });
}

nr_status nr_family_tree(const nr_family* family, nr_tree** out) {
  return Guard([&] {
    Require(family, "family");
    Require(out, "out");
    auto tree = std::make_unique<nr_tree>();
    tree->spec = nestrec::TreeOf(family->params);
    *out = tree.release();
  });
}

nr_status nr_family_ic_length(const nr_family* family, int64_t* out) {
  return Guard([&] {
    Require(family, "family");
    Require(out, "out");
    *out = nestrec::IcLength(family->params);
  });
}

nr_status nr_family_initial_conditions(const nr_family* family,
                                       int allow_probe_seed, nr_sequence** out,
                                       int* probe) {
  return Guard([&] {
    Require(family, "family");
    Require(out, "out");
    auto seq = std::make_unique<nr_sequence>();
    const bool has_tree = nestrec::Validate(family->params).usable() &&
                          nestrec::Covering(family->params).has_value();
    if (has_tree || allow_probe_seed == 0) {
      seq->values = nestrec::TreeInitialConditions(family->params);
    } else {
      const auto seed = nestrec::ProbeSeedOf(family->params);
      if (!seed) {
        Fail(ErrorCode::kNoTreeKnown,
             nestrec::ToString(family->params) +
                 " has no tree to draw initial conditions from");
      }
      seq->values = nestrec::InitialConditions(seed->tree, seed->length);
    }
    if (probe != nullptr) *probe = has_tree ? 0 : 1;
    *out = seq.release();
  });
}

// ---- recursions -----------------------------------------------------------

nr_status nr_recursion_parse(const char* text, nr_recursion** out,
                             nr_sequence** ic) {
  return Guard([&] {
    Require(out, "out");
    const auto doc = Parse(text).get<nestrec::RecursionDocument>();
    auto rec = std::make_unique<nr_recursion>();
    rec->spec = doc.spec;
    std::unique_ptr<nr_sequence> seq;
    if (!doc.initial_conditions.empty()) {
      seq = std::make_unique<nr_sequence>();
      seq->values = doc.initial_conditions;
    }
    *out = rec.release();
    if (ic != nullptr) *ic = seq.release();
  });
}

void nr_recursion_free(nr_recursion* rec) { delete rec; }

nr_status nr_recursion_to_json(const nr_recursion* rec, char** out) {
  return Guard([&] {
    Require(rec, "rec");
    Require(out, "out");
    *out = Copy(json(nestrec::RecursionDocument{rec->spec, {}}).dump());
  });
}

nr_status nr_recursion_describe(const nr_recursion* rec, char** out) {
  return Guard([&] {
    Require(rec, "rec");
    Require(out, "out");
    *out = Copy(nestrec::ToString(rec->spec));
  });
}

nr_status nr_evaluate(const nr_recursion* rec, const nr_sequence* ic,
                      int64_t n_max, nr_sequence** values,
                      int64_t* death_index, nr_death_reason* death_reason) {
  return Guard([&] {
    Require(rec, "rec");
    Require(ic, "ic");
    Require(values, "values");
    nestrec::EvalResult result = nestrec::Evaluate(rec->spec, ic->values, n_max);
    auto seq = std::make_unique<nr_sequence>();
    seq->values = std::move(result.values);
    if (death_index != nullptr) {
      *death_index = result.death ? result.death->index : 0;
    }
    if (death_reason != nullptr) {
      *death_reason = result.death ? ReasonOf(result.death->reason) : NR_ALIVE;
    }
    *values = seq.release();
  });
}

// ---- trees ----------------------------------------------------------------

nr_status nr_tree_create(int64_t k, int64_t s, int64_t j, int64_t per_cell,
                         int64_t last_cell, int64_t regular, nr_tree** out) {
  return Guard([&] {
    Require(out, "out");
    auto tree = std::make_unique<nr_tree>();
    tree->spec = {k, s, j, per_cell, last_cell, regular};
    tree->spec.Validate();
    *out = tree.release();
  });
}

nr_status nr_tree_parse(const char* text, nr_tree** out) {
  return Guard([&] {
    Require(out, "out");
    auto tree = std::make_unique<nr_tree>();
    tree->spec = Parse(text).get<nestrec::TreeSpec>();
    *out = tree.release();
  });
}

void nr_tree_free(nr_tree* tree) { delete tree; }

nr_status nr_tree_to_json(const nr_tree* tree, char** out) {
  return Guard([&] {
    Require(tree, "tree");
    Require(out, "out");
    *out = Copy(json(tree->spec).dump());
  });
}

nr_status nr_tree_cell_count(const nr_tree* tree, int64_t n, int64_t* out) {
  return Guard([&] {
    Require(tree, "tree");
    Require(out, "out");
    *out = nestrec::CellCount(tree->spec, n);
  });
}

nr_status nr_tree_initial_conditions(const nr_tree* tree, int64_t t,
                                     nr_sequence** out) {
  return Guard([&] {
    Require(tree, "tree");
    Require(out, "out");
    auto seq = std::make_unique<nr_sequence>();
    seq->values = nestrec::InitialConditions(tree->spec, t);
    *out = seq.release();
  });
}

nr_status nr_tree_closed_form(const nr_tree* tree, int64_t v, int64_t* out) {
  return Guard([&] {
    Require(tree, "tree");
    Require(out, "out");
    *out = nestrec::ClosedForm(tree->spec, v);
  });
}

nr_status nr_tree_prefix_json(const nr_tree* tree, int64_t n, char** out) {
  return Guard([&] {
    Require(tree, "tree");
    Require(out, "out");
    const nestrec::LabelledTree prefix = nestrec::BuildPrefix(tree->spec, n);
    json nodes = json::array();
    for (const auto& node : prefix.nodes) nodes.push_back(NodeJson(node));
    *out = Copy(json{{"tree", tree->spec},
                     {"n", prefix.n},
                     {"nonempty_cells", prefix.NonemptyCells()},
                     {"nodes", nodes}}
                    .dump());
  });
}

nr_status nr_tree_frequency(const nr_tree* tree, int64_t n, int64_t v_max,
                            int* agree, char** report_json) {
  return Guard([&] {
    Require(tree, "tree");
    Require(agree, "agree");
    const nestrec::FrequencyReport report =
        nestrec::RunFrequency(tree->spec, n, v_max);
    char* text = report_json != nullptr ? Copy(json(report).dump()) : nullptr;
    *agree = report.comparison.agree ? 1 : 0;
    if (report_json != nullptr) *report_json = text;
  });
}

// ---- tasks ----------------------------------------------------------------

nr_status nr_verify(const nr_family* family, int64_t n_max, int* agree,
                    char** report_json) {
  return Guard([&] {
    Require(family, "family");
    Require(agree, "agree");
    const nestrec::VerifyReport report =
        nestrec::RunVerify(family->params, n_max);
    char* text = report_json != nullptr ? Copy(json(report).dump()) : nullptr;
    *agree = report.agree ? 1 : 0;
    if (report_json != nullptr) *report_json = text;
  });
}

nr_status nr_prune(const nr_family* family, int64_t n, int enforce_precondition,
                   int trace, int* holds, char** report_json) {
  return Guard([&] {
    Require(family, "family");
    Require(holds, "holds");
    nestrec::PruneOptions options;
    options.enforce_precondition = enforce_precondition != 0;
    options.trace = trace != 0;
    const nestrec::PruneReport report =
        nestrec::Prune(family->params, n, options);
    const nestrec::CorrespondenceReport corr = nestrec::CheckCorrespondence(
        nestrec::BuildPrefix(nestrec::TreeOf(family->params), n), report);
    const bool ok = report.identity_holds &&
                    report.removed == report.expected_removed && corr.holds;
    char* text = nullptr;
    if (report_json != nullptr) {
      json j = report;
      j["family"] = family->params;
      j["correspondence"] = corr;
      j["holds"] = ok;
      text = Copy(j.dump());
    }
    *holds = ok ? 1 : 0;
    if (report_json != nullptr) *report_json = text;
  });
}

nr_status nr_prune_threshold(const nr_family* family, int64_t* out) {
  return Guard([&] {
    Require(family, "family");
    Require(out, "out");
    (void)nestrec::TreeOf(family->params);
    const auto covering = *nestrec::Covering(family->params);
    *out = std::visit([](const auto& g) { return nestrec::PruneThreshold(g); },
                      covering);
  });
}

nr_status nr_explore(const char* grid_json, uint64_t seed, unsigned threads,
                     char** csv) {
  return Guard([&] {
    Require(csv, "csv");
    const auto grid = Parse(grid_json).get<nestrec::ExploreGrid>();
    *csv = Copy(nestrec::ExploreCsv(nestrec::RunExplore(grid, seed, threads)));
  });
}

nr_status nr_oeis_match(const nr_sequence* seq, const char* stripped_path,
                        char** out) {
  return Guard([&] {
    Require(seq, "seq");
    Require(stripped_path, "stripped_path");
    Require(out, "out");
    json matches = json::array();
    for (const auto& m : nestrec::MatchCatalog(seq->values, stripped_path)) {
      matches.push_back({{"id", m.id}, {"offset", m.offset}});
    }
    *out = Copy(matches.dump());
  });
}

}  // extern "C"
