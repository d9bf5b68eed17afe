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

#include "nestrec/tasks.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "nestrec/error.hpp"
#include "nestrec/pruning.hpp"

namespace nestrec {

using nlohmann::json;

VerifyReport RunVerify(const FamilyParams& f, std::int64_t n_max) {
  if (n_max < 1) Fail(ErrorCode::kArgument, "verify needs n >= 1");
  VerifyReport report;
  report.family = f;
  report.tree = TreeOf(f);
  report.ic_length = IcLength(f);
  report.n_max = n_max;

  const std::vector<std::int64_t> counts = InitialConditions(report.tree, n_max);
  const auto ic_len = std::min(report.ic_length, n_max);
  const EvalResult eval =
      Evaluate(RecursionOf(f),
               std::span(counts).first(static_cast<std::size_t>(ic_len)), n_max);
  report.death = eval.death;
  for (std::size_t i = 0; i < eval.values.size(); ++i) {
    if (eval.values[i] != counts[i]) {
      report.first_divergence = static_cast<std::int64_t>(i + 1);
      report.recursion_value = eval.values[i];
      report.cell_count = counts[i];
      break;
    }
  }
  if (!report.first_divergence && eval.death) {
    report.first_divergence = eval.death->index;
    report.cell_count = counts[static_cast<std::size_t>(eval.death->index - 1)];
  }
  report.agree = !report.first_divergence;
  return report;
}

void to_json(json& j, const VerifyReport& report) {
  j = json{{"family", report.family},
           {"tree", report.tree},
           {"ic_length", report.ic_length},
           {"n", report.n_max},
           {"agree", report.agree}};
  if (report.first_divergence) {
    j["first_divergence"] = *report.first_divergence;
    j["cell_count"] = report.cell_count;
    if (report.death && report.death->index == *report.first_divergence) {
      j["death_reason"] = ToString(report.death->reason);
    } else {
      j["recursion"] = report.recursion_value;
    }
  } else {
    j["first_divergence"] = nullptr;
  }
}

SequenceFormat ParseSequenceFormat(const std::string& name) {
  if (name == "table") return SequenceFormat::kTable;
  if (name == "csv") return SequenceFormat::kCsv;
  if (name == "json") return SequenceFormat::kJson;
  if (name == "bfile") return SequenceFormat::kBfile;
  Fail(ErrorCode::kArgument, "unknown format \"" + name +
                                 "\" (expected table, csv, json or bfile)");
}

std::string FormatSequence(std::span<const std::int64_t> values,
                           SequenceFormat format) {
  if (values.empty()) Fail(ErrorCode::kArgument, "cannot export an empty sequence");
  std::ostringstream out;
  switch (format) {
    case SequenceFormat::kBfile:
      for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i + 1) << ' ' << values[i] << '\n';
      }
      break;
    case SequenceFormat::kCsv:
      out << "n,value\n";
      for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i + 1) << ',' << values[i] << '\n';
      }
      break;
    case SequenceFormat::kJson:
      out << json{{"offset", 1}, {"values", values}}.dump() << '\n';
      break;
    case SequenceFormat::kTable: {
      const int width = std::max<int>(
          5, static_cast<int>(std::to_string(values.size()).size()));
      out << std::setw(width) << "n" << "  value\n";
      for (std::size_t i = 0; i < values.size(); ++i) {
        out << std::setw(width) << (i + 1) << "  " << values[i] << '\n';
      }
      break;
    }
  }
  return out.str();
}

FrequencyReport RunFrequency(const TreeSpec& tree, std::int64_t n,
                             std::int64_t v_max) {
  FrequencySequence empirical = EmpiricalFrequency(tree, n);
  std::int64_t upto = empirical.v_max();
  if (v_max > 0) {
    if (v_max > upto) {
      Fail(ErrorCode::kArgument,
           "only values up to " + std::to_string(upto) + " complete by n=" +
               std::to_string(n) + "; raise n or lower vmax");
    }
    upto = v_max;
  }
  if (upto < 1) {
    Fail(ErrorCode::kArgument,
         "no value completes by n=" + std::to_string(n) + "; raise n");
  }
  FrequencySequence closed = ClosedFormSequence(tree, upto);
  FrequencyComparison comparison = Compare(empirical, closed, upto);
  return FrequencyReport{tree, n, std::move(empirical), std::move(closed),
                         comparison};
}

void to_json(json& j, const FrequencyReport& report) {
  j = json{{"tree", report.tree}, {"n", report.n}};
  j["comparison"] = report.comparison;
  const auto count = static_cast<std::size_t>(report.comparison.v_max);
  j["empirical"] = std::vector<std::int64_t>(
      report.empirical.entries().begin(),
      report.empirical.entries().begin() + static_cast<std::ptrdiff_t>(count));
  j["closed_form"] = report.closed_form.entries();
}

// --- explore --------------------------------------------------------------

namespace {

std::vector<std::int64_t> ParamValues(const std::string& key, const json& v) {
  if (v.is_array()) return v.get<std::vector<std::int64_t>>();
  if (v.is_number_integer()) return {v.get<std::int64_t>()};
  if (v.is_object() && v.contains("from") && v.contains("to")) {
    const auto from = v.at("from").get<std::int64_t>();
    const auto to = v.at("to").get<std::int64_t>();
    if (to < from || to - from > 100000) {
      Fail(ErrorCode::kParse, "grid range for \"" + key + "\" is empty or huge");
    }
    std::vector<std::int64_t> out;
    for (std::int64_t x = from; x <= to; ++x) out.push_back(x);
    return out;
  }
  Fail(ErrorCode::kParse, "grid parameter \"" + key +
                              "\" must be an integer, a list or {from,to}");
}

}  // namespace

void from_json(const json& j, ExploreGrid& grid) {
  try {
    grid.family = j.at("family").get<std::string>();
    grid.params.clear();
    if (j.contains("params")) {
      for (const auto& [key, value] : j.at("params").items()) {
        grid.params.emplace_back(key, ParamValues(key, value));
      }
    }
    grid.n_max = j.value("n", std::int64_t{1000});
    grid.prune_samples = j.value("prune_samples", std::int64_t{0});
    grid.prune_span = j.value("prune_span", std::int64_t{1000});
    grid.prune_n = j.value("prune_n", std::vector<std::int64_t>{});
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("grid JSON: ") + e.what());
  }
  if (grid.n_max < 1) Fail(ErrorCode::kParse, "grid \"n\" must be >= 1");
  if (grid.prune_samples < 0 || grid.prune_span < 1) {
    Fail(ErrorCode::kParse, "grid prune_samples must be >= 0, prune_span >= 1");
  }
}

namespace {

std::vector<json> GridPoints(const ExploreGrid& grid) {
  std::vector<json> points{json{{"family", grid.family}}};
  for (const auto& [key, values] : grid.params) {
    std::vector<json> next;
    for (const auto& point : points) {
      for (std::int64_t v : values) {
        json p = point;
        p[key] = v;
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  return points;
}

// The frequency the point is expected to have, if any.
std::optional<FrequencySequence> Conjecture(const FamilyParams& f,
                                            std::int64_t v_max) {
  if (const auto* g = std::get_if<family::NegGammaCandidate>(&f)) {
    // gamma * phi_{H_k} + delta * phi_{C_k}
    const FrequencySequence ceiling =
        ClosedFormSequence(TreeSpec{g->k, 0, 1, 1, g->k, 0}, v_max);
    const FrequencySequence conolly =
        ClosedFormSequence(TreeSpec{g->k, 0, 1, 1, 1, 1}, v_max);
    const std::pair<std::int64_t, FrequencySequence> terms[] = {
        {g->gamma, ceiling}, {g->delta, conolly}};
    return LinearCombination(terms);
  }
  if (Validate(f).usable() && Covering(f)) {
    return ClosedFormSequence(TreeOf(f), v_max);
  }
  return std::nullopt;
}

void ProbeFrequency(const FamilyParams& f, const EvalResult& eval,
                    ExploreRow& row) {
  const FrequencySequence empirical = FrequencyOf(eval.values);
  if (empirical.v_max() < 1) return;
  const auto conjecture = Conjecture(f, empirical.v_max());
  if (!conjecture) return;
  const FrequencyComparison cmp =
      Compare(empirical, *conjecture, empirical.v_max());
  row.frequency =
      cmp.agree ? "match" : "mismatch@" + std::to_string(*cmp.first_mismatch);
}

void ProbePrune(const FamilyParams& f, const ExploreGrid& grid,
                std::uint64_t seed, ExploreRow& row) {
  const auto covering = Covering(f);
  if (!covering || !Validate(f).usable()) return;
  if (grid.prune_n.empty() && grid.prune_samples == 0) return;
  const std::int64_t lo = std::visit(
      [](const auto& g) { return PruneThreshold(g); }, *covering);
  std::vector<std::int64_t> ns = grid.prune_n;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> pick(lo, lo + grid.prune_span - 1);
  for (std::int64_t i = 0; i < grid.prune_samples; ++i) ns.push_back(pick(rng));

  PruneOptions options;
  options.enforce_precondition = false;
  const TreeSpec tree = TreeOf(f);
  std::int64_t holding = 0;
  std::optional<std::int64_t> first_failure;
  for (std::int64_t n : ns) {
    const PruneReport report = Prune(f, n, options);
    const CorrespondenceReport corr =
        CheckCorrespondence(BuildPrefix(tree, n), report);
    const bool ok = report.identity_holds &&
                    report.removed == report.expected_removed && corr.holds;
    if (ok) {
      ++holding;
    } else if (!first_failure) {
      first_failure = n;
    }
  }
  row.prune = std::to_string(holding) + "/" + std::to_string(ns.size());
  if (first_failure) row.prune += " first_fail@" + std::to_string(*first_failure);
}

ExploreRow RunPoint(const json& point, const ExploreGrid& grid,
                    std::uint64_t seed) {
  ExploreRow row;
  row.params = point;
  const FamilyParams f = point.get<FamilyParams>();
  row.validation = Validate(f);

  RecursionSpec spec;
  try {
    spec = RecursionOf(f, /*allow_out_of_range=*/true);
  } catch (const Error& e) {
    row.status = "malformed";
    row.note = e.what();
    return row;
  }
  try {
    const auto seed_tree = ProbeSeedOf(f);
    if (!seed_tree) {
      row.status = "no_seed";
      row.note = "no tree to draw initial conditions from";
      return row;
    }
    const std::int64_t len = std::min(seed_tree->length, grid.n_max);
    const auto ic = InitialConditions(seed_tree->tree, len);
    const EvalResult eval = Evaluate(spec, ic, grid.n_max);
    row.status = eval.alive() ? "alive" : "dead";
    row.survived_to = static_cast<std::int64_t>(eval.values.size());
    row.death = eval.death;
    const SlownessVerdict slow = IsSlow(eval.values);
    row.slow = slow.slow;
    if (slow.slow && eval.alive()) ProbeFrequency(f, eval, row);
    ProbePrune(f, grid, seed, row);
  } catch (const std::exception& e) {
    row.status = "error";
    row.note = e.what();
  }
  return row;
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<ExploreRow> RunExplore(const ExploreGrid& grid, std::uint64_t seed,
                                   unsigned threads) {
  const std::vector<json> points = GridPoints(grid);
  // Parse every point up front so a bad grid fails before any work starts.
  for (const auto& point : points) (void)point.get<FamilyParams>();

  std::vector<ExploreRow> rows(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      rows[i] = RunPoint(points[i], grid, seed + i);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

std::string ExploreCsv(const std::vector<ExploreRow>& rows) {
  std::ostringstream out;
  out << "family,params,verdict,status,survived_to,death_index,death_reason,"
         "slow,frequency,prune,detail\n";
  for (const auto& row : rows) {
    std::string params;
    for (const auto& [key, value] : row.params.items()) {
      if (key == "family") continue;
      if (!params.empty()) params += ' ';
      params += key + "=" + value.dump();
    }
    std::string detail = row.validation.detail;
    if (!row.note.empty()) detail += (detail.empty() ? "" : "; ") + row.note;
    out << row.params.at("family").get<std::string>() << ',' << params << ','
        << ToString(row.validation.verdict) << ',' << row.status << ','
        << row.survived_to << ','
        << (row.death ? std::to_string(row.death->index) : "") << ','
        << (row.death ? ToString(row.death->reason) : "") << ','
        << (row.slow ? (*row.slow ? "yes" : "no") : "") << ',' << row.frequency
        << ',' << row.prune << ',' << CsvField(detail) << '\n';
  }
  return out.str();
}

// --- catalog --------------------------------------------------------------

std::vector<CatalogMatch> MatchCatalog(std::span<const std::int64_t> query,
                                       const std::string& stripped_path) {
  if (query.empty()) Fail(ErrorCode::kArgument, "catalog query is empty");
  const SlownessVerdict slow = IsSlow(query);
  if (!slow.slow) {
    Fail(ErrorCode::kArgument,
         "catalog query is not slow (first violation at term " +
             std::to_string(*slow.first_violation) + ")");
  }
  std::ifstream in(stripped_path);
  if (!in) {
    Fail(ErrorCode::kIo, "cannot open OEIS stripped snapshot \"" +
                             stripped_path + "\"");
  }
  std::vector<std::string> wanted;
  for (std::int64_t v : query) wanted.push_back(std::to_string(v));

  std::vector<CatalogMatch> matches;
  std::string line;
  std::vector<std::string> terms;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto space = line.find_first_of(" ,");
    if (space == std::string::npos) continue;
    terms.clear();
    std::istringstream fields(line.substr(space));
    std::string field;
    while (std::getline(fields, field, ',')) {
      field.erase(std::remove(field.begin(), field.end(), ' '), field.end());
      if (!field.empty()) terms.push_back(field);
    }
    const auto hit = std::search(terms.begin(), terms.end(), wanted.begin(),
                                 wanted.end());
    if (hit != terms.end()) {
      matches.push_back({line.substr(0, space),
                         static_cast<std::int64_t>(hit - terms.begin()) + 1});
    }
  }
  if (in.bad()) Fail(ErrorCode::kIo, "error reading \"" + stripped_path + "\"");
  return matches;
}

}  // namespace nestrec
