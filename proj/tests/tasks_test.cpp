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

#include <gtest/gtest.h>
#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nestrec/error.hpp"
#include "nestrec/families.hpp"
#include "nestrec/tasks.hpp"

namespace nestrec {
namespace {

using Values = std::vector<std::int64_t>;

TEST(RunVerify, CoveredFamiliesAgree) {
  const auto report = RunVerify(family::OrderOne{1, 3, 1}, 10000);
  EXPECT_TRUE(report.agree);
  EXPECT_FALSE(report.first_divergence.has_value());
  EXPECT_EQ(report.ic_length, 20);
  const auto kary = RunVerify(family::KaryOrderP{3, 0, 1}, 10000);
  EXPECT_TRUE(kary.agree);
}

TEST(RunVerify, KaryConollyMatchesItsOwnRecursion) {
  const auto tree = TreeOf(family::KaryOrderP{3, 0, 1});
  EXPECT_EQ(tree, TreeOf(family::KaryConolly{3}));
  EXPECT_EQ(RecursionOf(family::KaryOrderP{3, 0, 1}),
            RecursionOf(family::KaryConolly{3}));
}

TEST(RunVerify, ErrorsForMissingTreeAndBadParameters) {
  try {
    RunVerify(family::QFamily{0, 3, 1}, 100);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoTreeKnown);
  }
  try {
    RunVerify(family::OrderOne{0, 2, 3}, 100);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidation);
  }
}

TEST(RunVerify, ReportJson) {
  const nlohmann::json j = RunVerify(family::Conolly{}, 50);
  EXPECT_EQ(j.at("agree"), true);
  EXPECT_EQ(j.at("n"), 50);
  EXPECT_TRUE(j.at("first_divergence").is_null());
}

TEST(FormatSequence, BfileAndCsv) {
  EXPECT_EQ(FormatSequence(Values{1, 2, 2}, SequenceFormat::kBfile),
            "1 1\n2 2\n3 2\n");
  EXPECT_EQ(FormatSequence(Values{1, 1}, SequenceFormat::kBfile), "1 1\n2 1\n");
  EXPECT_EQ(FormatSequence(Values{1, 1}, SequenceFormat::kCsv),
            "n,value\n1,1\n2,1\n");
  const auto j = nlohmann::json::parse(
      FormatSequence(Values{3, 4}, SequenceFormat::kJson));
  EXPECT_EQ(j.at("values"), nlohmann::json::array({3, 4}));
  EXPECT_THROW(FormatSequence(Values{}, SequenceFormat::kBfile), Error);
}

TEST(FormatSequence, FormatNames) {
  EXPECT_EQ(ParseSequenceFormat("bfile"), SequenceFormat::kBfile);
  EXPECT_EQ(ParseSequenceFormat("table"), SequenceFormat::kTable);
  EXPECT_THROW(ParseSequenceFormat("xml"), Error);
}

TEST(RunFrequency, AgreesOnCoveredTree) {
  const auto report = RunFrequency(TreeOf(family::OrderOne{1, 3, 1}), 20000, 0);
  EXPECT_TRUE(report.comparison.agree);
  EXPECT_GT(report.comparison.v_max, 100);
  EXPECT_THROW(RunFrequency(TreeOf(family::Conolly{}), 100, 1000), Error);
}

ExploreGrid Grid(const std::string& text) {
  return nlohmann::json::parse(text).get<ExploreGrid>();
}

TEST(ExploreGrid, ParsesListsRangesAndScalars) {
  const auto grid = Grid(
      R"({"family":"order_one","params":{"s":0,"j":[1,2],"m":{"from":-1,"to":1}},"n":200})");
  EXPECT_EQ(grid.family, "order_one");
  EXPECT_EQ(grid.n_max, 200);
  ASSERT_EQ(grid.params.size(), 3u);
  EXPECT_EQ(RunExplore(grid, 1, 1).size(), 6u);
  EXPECT_THROW(Grid(R"({"params":{}})"), Error);
}

TEST(RunExplore, OrderOneOutOfRangeDies) {
  for (std::int64_t j = 1; j <= 4; ++j) {
    const auto rows = RunExplore(
        Grid(R"({"family":"order_one","params":{"s":[0],"j":[)" +
             std::to_string(j) + R"(],"m":{"from":-2,"to":)" +
             std::to_string(j + 2) + "}},\"n\":1000}"),
        1, 2);
    for (const auto& row : rows) {
      const std::int64_t m = row.params.at("m");
      if (m >= 0 && m <= j) {
        EXPECT_EQ(row.status, "alive") << row.params.dump();
        EXPECT_EQ(row.frequency, "match") << row.params.dump();
      } else {
        EXPECT_EQ(row.validation.verdict, Verdict::kViolation);
        if (2 * j + m < 1) {
          // The second inner offset 2j + m is no longer positive.
          EXPECT_EQ(row.status, "malformed") << row.params.dump();
          continue;
        }
        // Recorded, not asserted: whether the probe dies.
        EXPECT_TRUE(row.status == "alive" || row.status == "dead")
            << row.params.dump() << " " << row.status << " " << row.note;
      }
    }
  }
}

TEST(RunExplore, DeterministicAcrossThreadCounts) {
  const auto grid = Grid(
      R"({"family":"superposed","params":{"s":0,"j":[2,3],"m":{"from":-1,"to":3},"p":[2]},"n":500,"prune_samples":3,"prune_span":200})");
  const std::string one = ExploreCsv(RunExplore(grid, 42, 1));
  const std::string many = ExploreCsv(RunExplore(grid, 42, 4));
  EXPECT_EQ(one, many);
  EXPECT_NE(one, ExploreCsv(RunExplore(grid, 43, 4)));
}

TEST(RunExplore, RecordsExploratoryPruneFailure) {
  const auto rows = RunExplore(
      Grid(R"({"family":"superposed","params":{"s":0,"j":4,"m":-2,"p":9},"n":300,"prune_n":[168]})"),
      1, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].validation.verdict, Verdict::kExploratory);
  EXPECT_EQ(rows[0].prune, "0/1 first_fail@168");
}

TEST(RunExplore, NegGammaIsComparedAgainstItsConjecture) {
  const auto rows = RunExplore(
      Grid(R"({"family":"neg_gamma","params":{"k":3,"gamma":-1,"delta":4},"n":3000})"),
      1, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NE(rows[0].status, "error") << rows[0].note;
  if (rows[0].status == "alive" && rows[0].slow.value_or(false)) {
    EXPECT_TRUE(rows[0].frequency == "match" ||
                rows[0].frequency.rfind("mismatch@", 0) == 0)
        << rows[0].frequency;
  }
}

TEST(ExploreCsv, HeaderAndQuoting) {
  const auto rows = RunExplore(
      Grid(R"({"family":"order_one","params":{"s":0,"j":2,"m":3},"n":100})"), 1,
      1);
  const std::string csv = ExploreCsv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "family,params,verdict,status,survived_to,death_index,death_reason,"
            "slow,frequency,prune,detail");
  EXPECT_NE(csv.find("order_one,j=2 m=3 s=0,violation,"), std::string::npos)
      << csv;
}

class CatalogTest : public ::testing::Test {
 protected:
  void SetUp() override {
    path_ = std::filesystem::temp_directory_path() /
            ("nestrec_catalog_" + std::to_string(::getpid()) + ".txt");
    std::ofstream out(path_);
    out << "# comment line\n"
        << "A000001 ,0,1,1,1,2,1,2,1,5,2,2,1,5,1,2,1,14,\n"
        << "A046699 ,1,2,2,3,4,4,4,5,6,6,7,8,8,8,8,9,10,10,\n"
        << "A004526 ,0,0,1,1,2,2,3,3,4,4,5,5,6,6,7,7,\n";
  }
  void TearDown() override { std::filesystem::remove(path_); }
  std::filesystem::path path_;
};

TEST_F(CatalogTest, FindsContiguousRuns) {
  const auto conolly = MatchCatalog(Values{1, 2, 2, 3, 4, 4, 4, 5}, path_);
  ASSERT_EQ(conolly.size(), 1u);
  EXPECT_EQ(conolly[0].id, "A046699");
  EXPECT_EQ(conolly[0].offset, 1);
  const auto ceiling = MatchCatalog(Values{1, 1, 2, 2, 3, 3}, path_);
  ASSERT_EQ(ceiling.size(), 1u);
  EXPECT_EQ(ceiling[0].id, "A004526");
  EXPECT_EQ(ceiling[0].offset, 3);
  EXPECT_TRUE(MatchCatalog(Values{1, 2, 3, 4, 5, 6, 7}, path_).empty());
}

TEST_F(CatalogTest, RejectsNonSlowAndMissingFile) {
  EXPECT_THROW(MatchCatalog(Values{0, 0, 0}, path_), Error);
  EXPECT_THROW(MatchCatalog(Values{}, path_), Error);
  try {
    MatchCatalog(Values{1, 2}, path_.string() + ".missing");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace nestrec
