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

// nestrec: evaluate, count, verify, prune-check, sweep and export nested
// recursions. Exit status: 0 success or agreement, 1 divergence / death /
// failed check, 2 usage or validation error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nestrec/nestrec.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFound = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int exit_code;
  std::string message;
};

void Check(nr_status status) {
  if (status != NR_OK) {
    throw Failure{kExitUsage, std::string(nr_status_name(status)) + ": " +
                                  nr_last_error()};
  }
}

[[noreturn]] void Usage(const std::string& message) {
  throw Failure{kExitUsage, message};
}

// Owning wrappers around the C handles.
struct StringDeleter {
  void operator()(char* s) const { nr_string_free(s); }
};
struct FamilyDeleter {
  void operator()(nr_family* f) const { nr_family_free(f); }
};
struct RecursionDeleter {
  void operator()(nr_recursion* r) const { nr_recursion_free(r); }
};
struct TreeDeleter {
  void operator()(nr_tree* t) const { nr_tree_free(t); }
};
struct SequenceDeleter {
  void operator()(nr_sequence* s) const { nr_sequence_free(s); }
};
using Family = std::unique_ptr<nr_family, FamilyDeleter>;
using Recursion = std::unique_ptr<nr_recursion, RecursionDeleter>;
using Tree = std::unique_ptr<nr_tree, TreeDeleter>;
using Sequence = std::unique_ptr<nr_sequence, SequenceDeleter>;

std::string Take(char* raw) {
  std::unique_ptr<char, StringDeleter> owned(raw);
  return owned ? std::string(owned.get()) : std::string();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Usage("cannot read \"" + path + "\"");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Inline JSON, or the path of a file holding it.
std::string JsonArgument(const std::string& value) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && value[first] == '{') return value;
  return ReadFile(value);
}

void Emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) Usage("cannot write \"" + out_path + "\"");
  out << text;
  if (!out) Usage("error writing \"" + out_path + "\"");
}

struct Options {
  std::string family;
  std::vector<std::string> words;  // positional: name key=value ...
  std::string spec;
  std::int64_t n = 0;
  std::int64_t vmax = 0;
  std::string format;
  std::string out;
  std::uint64_t seed = 1;
  std::string grid;
  bool trace = false;
  std::int64_t samples = 0;
  std::int64_t span = 1000;
  bool no_precondition = false;
  bool nodes = false;
  bool allow_out_of_range = false;
  unsigned threads = 0;
  std::string oeis;
};

// Positional "order_one s=1 j=3 m=1" becomes the family JSON.
std::string WordsToJson(const std::vector<std::string>& words) {
  json j{{"family", words.front()}};
  for (std::size_t i = 1; i < words.size(); ++i) {
    const auto eq = words[i].find('=');
    if (eq == std::string::npos || eq == 0) {
      Usage("expected key=value, got \"" + words[i] + "\"");
    }
    const std::string key = words[i].substr(0, eq);
    const std::string value = words[i].substr(eq + 1);
    std::size_t used = 0;
    long long parsed = 0;
    try {
      parsed = std::stoll(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      Usage("parameter " + key + " needs an integer, got \"" + value + "\"");
    }
    j[key] = parsed;
  }
  return j.dump();
}

bool HasFamily(const Options& o) { return !o.family.empty() || !o.words.empty(); }

Family LoadFamily(const Options& o) {
  if (!o.family.empty() && !o.words.empty()) {
    Usage("give the family either with --family or positionally, not both");
  }
  const std::string text =
      o.family.empty() ? WordsToJson(o.words) : JsonArgument(o.family);
  nr_family* raw = nullptr;
  Check(nr_family_parse(text.c_str(), &raw));
  return Family(raw);
}

void RequireOneSource(const Options& o) {
  if (HasFamily(o) == !o.spec.empty()) {
    Usage("exactly one input is required: a family or --spec");
  }
}

json SpecDocument(const Options& o) {
  try {
    return json::parse(JsonArgument(o.spec));
  } catch (const json::parse_error& e) {
    Usage(std::string("spec: ") + e.what());
  }
}

Sequence Truncate(const nr_sequence* seq, std::int64_t n) {
  const auto len = std::min<std::size_t>(nr_sequence_length(seq),
                                         static_cast<std::size_t>(n));
  nr_sequence* raw = nullptr;
  Check(nr_sequence_create(nr_sequence_data(seq), len, &raw));
  return Sequence(raw);
}

struct Evaluated {
  Sequence values;
  std::int64_t death_index = 0;
  nr_death_reason reason = NR_ALIVE;
};

// Evaluates the selected recursion from its tree (or probe) initial
// conditions, or from the recursion document's "ic".
Evaluated EvaluateInput(const Options& o) {
  RequireOneSource(o);
  if (o.n < 1) Usage("--n must be >= 1");
  Recursion rec;
  Sequence ic;
  if (HasFamily(o)) {
    Family f = LoadFamily(o);
    nr_verdict verdict;
    char* detail = nullptr;
    Check(nr_family_validate(f.get(), &verdict, &detail));
    const std::string why = Take(detail);
    if (verdict == NR_VERDICT_VIOLATION && !o.allow_out_of_range) {
      Usage("validation: " + why + " (pass --allow-out-of-range to probe)");
    }
    nr_recursion* r = nullptr;
    Check(nr_family_recursion(f.get(), 1, &r));
    rec.reset(r);
    nr_sequence* s = nullptr;
    int probe = 0;
    Check(nr_family_initial_conditions(f.get(), 1, &s, &probe));
    ic.reset(s);
    if (probe) {
      std::cerr << "note: no tree for this family; " << nr_sequence_length(s)
                << " initial conditions taken from the nearest tree\n";
    }
  } else {
    nr_recursion* r = nullptr;
    nr_sequence* s = nullptr;
    Check(nr_recursion_parse(SpecDocument(o).dump().c_str(), &r, &s));
    rec.reset(r);
    ic.reset(s);
    if (!ic) Usage("spec has no \"ic\" initial conditions");
  }
  Sequence start = Truncate(ic.get(), o.n);
  Evaluated out;
  nr_sequence* values = nullptr;
  Check(nr_evaluate(rec.get(), start.get(), o.n, &values, &out.death_index,
                    &out.reason));
  out.values.reset(values);
  return out;
}

std::string Format(const nr_sequence* seq, const std::string& format) {
  char* text = nullptr;
  Check(nr_sequence_format(seq, format.c_str(), &text));
  return Take(text);
}

int ReportDeath(const Evaluated& e) {
  if (e.death_index == 0) return kExitOk;
  std::cerr << "dead at n=" << e.death_index << " ("
            << nr_death_reason_name(e.reason) << ")\n";
  return kExitFound;
}

int RunEval(const Options& o) {
  const Evaluated e = EvaluateInput(o);
  if (nr_sequence_length(e.values.get()) > 0) {
    Emit(Format(e.values.get(), o.format.empty() ? "table" : o.format), o.out);
  }
  return ReportDeath(e);
}

int RunExport(const Options& o) {
  const Evaluated e = EvaluateInput(o);
  Emit(Format(e.values.get(), o.format.empty() ? "bfile" : o.format), o.out);
  return ReportDeath(e);
}

Tree LoadTree(const Options& o) {
  RequireOneSource(o);
  nr_tree* raw = nullptr;
  if (HasFamily(o)) {
    Family f = LoadFamily(o);
    Check(nr_family_tree(f.get(), &raw));
  } else {
    Check(nr_tree_parse(SpecDocument(o).dump().c_str(), &raw));
  }
  return Tree(raw);
}

int RunTree(const Options& o) {
  Tree tree = LoadTree(o);
  if (o.n < 1) Usage("--n must be >= 1");
  if (o.nodes) {
    char* text = nullptr;
    Check(nr_tree_prefix_json(tree.get(), o.n, &text));
    Emit(Take(text) + "\n", o.out);
    return kExitOk;
  }
  nr_sequence* raw = nullptr;
  Check(nr_tree_initial_conditions(tree.get(), o.n, &raw));
  Sequence counts(raw);
  Emit(Format(counts.get(), o.format.empty() ? "table" : o.format), o.out);
  return kExitOk;
}

int RunIc(const Options& o) {
  if (!HasFamily(o)) Usage("ic needs a family");
  Family f = LoadFamily(o);
  nr_sequence* raw = nullptr;
  Check(nr_family_initial_conditions(f.get(), 0, &raw, nullptr));
  Sequence ic(raw);
  std::cerr << "initial conditions: " << nr_sequence_length(raw) << "\n";
  Emit(Format(ic.get(), o.format.empty() ? "table" : o.format), o.out);
  return kExitOk;
}

int RunFreq(const Options& o) {
  RequireOneSource(o);
  if (!HasFamily(o) && SpecDocument(o).contains("arity")) {
    // A raw recursion: only the empirical frequency is available.
    const Evaluated e = EvaluateInput(o);
    char* csv = nullptr;
    Check(nr_sequence_frequency_csv(e.values.get(), &csv));
    Emit(Take(csv), o.out);
    return ReportDeath(e);
  }
  Tree tree = LoadTree(o);
  const std::int64_t n = o.n > 0 ? o.n : 100000;
  int agree = 0;
  char* text = nullptr;
  Check(nr_tree_frequency(tree.get(), n, o.vmax, &agree, &text));
  const json report = json::parse(Take(text));
  const std::string format = o.format.empty() ? "table" : o.format;
  std::ostringstream out;
  const auto& emp = report.at("empirical");
  const auto& closed = report.at("closed_form");
  if (format == "json") {
    out << report.dump() << "\n";
  } else if (format == "csv") {
    out << "v,phi\n";
    for (std::size_t v = 0; v < emp.size(); ++v) {
      out << (v + 1) << ',' << emp[v].get<std::int64_t>() << '\n';
    }
  } else if (format == "table") {
    out << "    v  empirical  closed_form\n";
    for (std::size_t v = 0; v < emp.size(); ++v) {
      out << std::setw(5) << (v + 1) << "  " << std::setw(9)
          << emp[v].get<std::int64_t>() << "  " << std::setw(11)
          << closed[v].get<std::int64_t>() << '\n';
    }
  } else {
    Usage("freq supports table, csv or json");
  }
  Emit(out.str(), o.out);
  if (!agree) {
    std::cerr << "closed form differs at v="
              << report.at("comparison").at("first_mismatch") << "\n";
  }
  return agree ? kExitOk : kExitFound;
}

int RunVerify(const Options& o) {
  if (!HasFamily(o)) Usage("verify needs a family");
  Family f = LoadFamily(o);
  const std::int64_t n = o.n > 0 ? o.n : 10000;
  int agree = 0;
  char* text = nullptr;
  Check(nr_verify(f.get(), n, &agree, &text));
  const json report = json::parse(Take(text));
  if (o.format == "json") {
    Emit(report.dump() + "\n", o.out);
  } else if (agree) {
    Emit("agree: recursion equals cell count for n <= " + std::to_string(n) +
             "\n",
         o.out);
  } else {
    std::ostringstream line;
    line << "diverge at n=" << report.at("first_divergence")
         << ": cell count " << report.at("cell_count");
    if (report.contains("death_reason")) {
      line << ", recursion dead (" << report.at("death_reason").get<std::string>()
           << ")";
    } else {
      line << ", recursion " << report.at("recursion");
    }
    Emit(line.str() + "\n", o.out);
  }
  return agree ? kExitOk : kExitFound;
}

int RunPrune(const Options& o) {
  if (!HasFamily(o)) Usage("prune needs a family");
  Family f = LoadFamily(o);
  std::vector<std::int64_t> ns;
  if (o.n > 0) ns.push_back(o.n);
  if (o.samples > 0) {
    std::int64_t lo = 0;
    Check(nr_prune_threshold(f.get(), &lo));
    std::cerr << "seed: " << o.seed << "\n";
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::int64_t> pick(lo, lo + o.span - 1);
    for (std::int64_t i = 0; i < o.samples; ++i) ns.push_back(pick(rng));
  }
  if (ns.empty()) Usage("prune needs --n or --samples");
  std::ostringstream out;
  bool all = true;
  for (std::int64_t n : ns) {
    int holds = 0;
    char* text = nullptr;
    Check(nr_prune(f.get(), n, o.no_precondition ? 0 : 1, o.trace ? 1 : 0,
                   &holds, &text));
    out << Take(text) << "\n";
    all = all && holds;
  }
  Emit(out.str(), o.out);
  return all ? kExitOk : kExitFound;
}

int RunExplore(const Options& o) {
  if (o.grid.empty()) Usage("explore needs --grid");
  std::cerr << "seed: " << o.seed << "\n";
  char* csv = nullptr;
  Check(nr_explore(JsonArgument(o.grid).c_str(), o.seed, o.threads, &csv));
  Emit(Take(csv), o.out);
  return kExitOk;
}

int RunOeisMatch(const Options& o) {
  std::string path = o.oeis;
  if (path.empty()) {
    const char* env = std::getenv("NESTREC_OEIS_STRIPPED");
    if (env != nullptr) path = env;
  }
  if (path.empty()) {
    Usage("no OEIS snapshot: pass --oeis or set NESTREC_OEIS_STRIPPED");
  }
  Options eval = o;
  if (eval.n < 1) eval.n = 40;
  const Evaluated e = EvaluateInput(eval);
  if (e.death_index != 0) return ReportDeath(e);
  char* text = nullptr;
  Check(nr_oeis_match(e.values.get(), path.c_str(), &text));
  const json matches = json::parse(Take(text));
  std::ostringstream out;
  if (o.format == "json") {
    out << matches.dump() << "\n";
  } else {
    for (const auto& m : matches) {
      out << m.at("id").get<std::string>() << " offset "
          << m.at("offset").get<std::int64_t>() << "\n";
    }
  }
  Emit(out.str(), o.out);
  return matches.empty() ? kExitFound : kExitOk;
}

void AddInput(CLI::App* cmd, Options& o) {
  cmd->add_option("params", o.words,
                  "Family name followed by key=value parameters");
  cmd->add_option("--family", o.family, "Family as JSON text or a JSON file");
  cmd->add_option("--spec", o.spec,
                  "Recursion (or, for tree/freq, tree) spec as JSON or a file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested recursions, their tree solutions, and pruning checks",
               "nestrec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nr_version()));
  Options o;

  auto* eval = app.add_subcommand("eval", "Evaluate a recursion");
  AddInput(eval, o);
  eval->add_option("--n", o.n, "Number of terms")->required();
  eval->add_option("--format", o.format, "table, csv, json or bfile");
  eval->add_option("--out", o.out, "Output file (default stdout)");
  eval->add_flag("--allow-out-of-range", o.allow_out_of_range,
                 "Probe parameters outside the family's range");

  auto* tree = app.add_subcommand("tree", "Cell counts C_T(1..n) of a tree");
  AddInput(tree, o);
  tree->add_option("--n", o.n, "Number of labels")->required();
  tree->add_option("--format", o.format, "table, csv, json or bfile");
  tree->add_option("--out", o.out, "Output file");
  tree->add_flag("--nodes", o.nodes, "Dump the labelled prefix T(n) as JSON");

  auto* ic = app.add_subcommand("ic", "Tree initial conditions of a family");
  AddInput(ic, o);
  ic->add_option("--format", o.format, "table, csv, json or bfile");
  ic->add_option("--out", o.out, "Output file");

  auto* freq = app.add_subcommand("freq", "Frequency sequence vs closed form");
  AddInput(freq, o);
  freq->add_option("--n", o.n, "Cell counts taken up to n (default 100000)");
  freq->add_option("--vmax", o.vmax, "Compare values 1..vmax");
  freq->add_option("--format", o.format, "table, csv or json");
  freq->add_option("--out", o.out, "Output file");

  auto* verify = app.add_subcommand("verify", "Recursion against cell count");
  AddInput(verify, o);
  verify->add_option("--n", o.n, "Compare up to n (default 10000)");
  verify->add_option("--format", o.format, "text or json");
  verify->add_option("--out", o.out, "Output file");

  auto* prune = app.add_subcommand("prune", "Check pruning identities");
  AddInput(prune, o);
  prune->add_option("--n", o.n, "Prune T(n)");
  prune->add_option("--samples", o.samples,
                    "Also prune this many seeded n above the precondition");
  prune->add_option("--span", o.span, "Width of the sampling window");
  prune->add_option("--seed", o.seed, "Sampling seed (default 1)");
  prune->add_flag("--trace", o.trace, "Include every label movement");
  prune->add_flag("--no-precondition", o.no_precondition,
                  "Prune below the precondition and report the outcome");
  prune->add_option("--out", o.out, "Output file");

  auto* explore = app.add_subcommand("explore", "Sweep a parameter grid");
  explore->add_option("--grid", o.grid, "Grid as JSON text or a file")
      ->required();
  explore->add_option("--seed", o.seed, "Sampling seed (default 1)");
  explore->add_option("--threads", o.threads, "Worker threads (0 = all)");
  explore->add_option("--out", o.out, "Output CSV file");

  auto* exp = app.add_subcommand("export", "Write a sequence as a b-file");
  AddInput(exp, o);
  exp->add_option("--n", o.n, "Number of terms")->required();
  exp->add_option("--format", o.format, "bfile (default), csv, json, table");
  exp->add_option("--out", o.out, "Output file");
  exp->add_flag("--allow-out-of-range", o.allow_out_of_range,
                "Probe parameters outside the family's range");

  auto* oeis = app.add_subcommand("oeis-match", "Look a sequence up offline");
  AddInput(oeis, o);
  oeis->add_option("--n", o.n, "Terms to match (default 40)");
  oeis->add_option("--oeis", o.oeis,
                   "OEIS stripped snapshot (or NESTREC_OEIS_STRIPPED)");
  oeis->add_option("--format", o.format, "text or json");
  oeis->add_option("--out", o.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return RunEval(o);
    if (tree->parsed()) return RunTree(o);
    if (ic->parsed()) return RunIc(o);
    if (freq->parsed()) return RunFreq(o);
    if (verify->parsed()) return RunVerify(o);
    if (prune->parsed()) return RunPrune(o);
    if (explore->parsed()) return RunExplore(o);
    if (exp->parsed()) return RunExport(o);
    if (oeis->parsed()) return RunOeisMatch(o);
  } catch (const Failure& f) {
    std::cerr << "nestrec: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "nestrec: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
