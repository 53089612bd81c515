// Copyright 2026 The csvkg Authors
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

#include "csvkg/fidelity.h"

#include <gtest/gtest.h>

#include "support/fixtures.h"
#include "support/oracles.h"

namespace csvkg {
namespace {

GoldSet OneFact(const std::string& subject, const std::string& time,
                const std::string& value) {
  GoldSet g;
  g.facts.push_back({"d", subject, time, value, 0, 1});
  return g;
}

ErrorClass ClassOf(const KnowledgeGraph& g, const GoldSet& gold) {
  FidelityReport r = fact_coverage(g, gold);
  return r.outcomes.at(0).error_class;
}

TEST(FactCoverage, MatchesOracleOnRandomInstances) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto inst = testing::random_instance(seed);
    FidelityReport r = fact_coverage(inst.graph, inst.gold);
    for (std::size_t i = 0; i < inst.gold.facts.size(); ++i)
      ASSERT_EQ(r.outcomes[i].covered,
                testing::oracle_fact_covered(inst.graph, inst.gold.facts[i]))
          << "seed " << seed << " fact " << i;
    EXPECT_DOUBLE_EQ(r.fc, testing::oracle_fc(inst.graph, inst.gold));
  }
}

TEST(FactCoverage, CoveredThroughEdge) {
  KnowledgeGraph g;
  g.add_node({"Aruba", "Aruba", "Country", ""});
  g.add_node({"v", "v", "StatValue", ""});
  g.add_edge({"Aruba", "v", "population in 2000 : 90.5", ""});
  EXPECT_DOUBLE_EQ(fact_coverage(g, OneFact("Aruba", "2000", "90.50")).fc, 1.0);
}

TEST(FactCoverage, HopLimit) {
  KnowledgeGraph g;
  g.add_node({"Aruba", "Aruba", "Country", ""});
  g.add_node({"n1", "n1", "", ""});
  g.add_node({"n2", "n2", "", ""});
  g.add_node({"n3", "n3", "", "2000: 7"});
  g.add_edge({"Aruba", "n1", "", ""});
  g.add_edge({"n1", "n2", "", ""});
  g.add_edge({"n2", "n3", "", ""});
  GoldSet gold = OneFact("Aruba", "2000", "7");
  EXPECT_DOUBLE_EQ(fact_coverage(g, gold).fc, 0.0);
  MatchOptions three;
  three.hops = 3;
  EXPECT_DOUBLE_EQ(fact_coverage(g, gold, three).fc, 1.0);
}

TEST(Cascade, EachClass) {
  {
    KnowledgeGraph g;
    g.add_node({"x", "Bonaire", "", "2000: 7"});
    EXPECT_EQ(ClassOf(g, OneFact("Aruba", "2000", "7")), ErrorClass::kEntityMissing);
  }
  {
    KnowledgeGraph g;
    g.add_node({"Aruba", "Aruba", "", ""});
    g.add_node({"v", "v", "", "2000: 7"});
    EXPECT_EQ(ClassOf(g, OneFact("Aruba", "2000", "7")), ErrorClass::kEntityIsolated);
  }
  {
    KnowledgeGraph g;
    g.add_node({"Aruba", "Aruba", "", ""});
    g.add_node({"v", "v", "", "2000: 8"});
    g.add_edge({"Aruba", "v", "", ""});
    EXPECT_EQ(ClassOf(g, OneFact("Aruba", "2000", "7")), ErrorClass::kValueMissing);
  }
  {
    KnowledgeGraph g;
    g.add_node({"Aruba", "Aruba", "", ""});
    g.add_node({"v", "v", "", "value 7"});
    g.add_edge({"Aruba", "v", "", ""});
    EXPECT_EQ(ClassOf(g, OneFact("Aruba", "2000", "7")), ErrorClass::kYearMissing);
  }
  {
    KnowledgeGraph g;
    g.add_node({"Aruba", "Aruba", "", ""});
    g.add_node({"v", "v", "", "value 7"});
    g.add_node({"y", "y", "", "year 2000"});
    g.add_edge({"Aruba", "v", "", ""});
    g.add_edge({"Aruba", "y", "", ""});
    EXPECT_EQ(ClassOf(g, OneFact("Aruba", "2000", "7")), ErrorClass::kValueWrongBinding);
  }
}

TEST(Cascade, TaxonomyCountsSumToMisses) {
  auto inst = testing::random_instance(77);
  FidelityReport r = fact_coverage(inst.graph, inst.gold);
  std::size_t misses = 0, total = 0;
  for (const auto& o : r.outcomes) misses += !o.covered;
  for (const auto& [k, v] : r.taxonomy_counts) total += v;
  EXPECT_EQ(total, misses);
  EXPECT_EQ(r.taxonomy_counts.size(), error_classes().size());
}

TEST(Matching, ValuesAndTimes) {
  MatchOptions o;
  EXPECT_TRUE(value_matches("pop 1,234.5 people", "1234.50", o));
  EXPECT_FALSE(value_matches("pop 1234.56", "1234.5", o));
  o.accept_floor2 = true;
  EXPECT_TRUE(value_matches("pop 77.45", "77.456", o));
  EXPECT_TRUE(value_matches("status: high", "High", o));
  EXPECT_FALSE(value_matches("status: highest", "High", o));
  EXPECT_TRUE(time_matches("population_year2000=5", "2000"));
  EXPECT_FALSE(time_matches("id 120001", "2000"));
  EXPECT_TRUE(time_matches("Fiscal_Q1: 3", "Fiscal Q1"));
  EXPECT_FALSE(time_matches("Fiscal Q2: 3", "Fiscal Q1"));
}

TEST(EntityCoverage, SubstringEitherWay) {
  KnowledgeGraph g;
  g.add_node({"1", "United States of America", "", ""});
  g.add_node({"2", "Korea", "", ""});
  GoldSet gold;
  gold.facts.push_back({"d", "United States", "2000", "1", 0, 1});
  gold.facts.push_back({"d", "Korea, Rep.", "2000", "1", 1, 1});
  gold.facts.push_back({"d", "Chad", "2000", "1", 2, 1});
  EntityCoverage ec = entity_coverage(g, gold);
  EXPECT_NEAR(ec.ec, 2.0 / 3.0, 1e-12);
}

TEST(DeterministicParse, RoundTripIsPerfect) {
  CsvTable t = testing::wide_matrix(60);
  GoldSet gold = generate_gold(t, "Country Name", 50, testing::standard_gold_years(), 42);
  std::vector<std::string> years;
  for (int y = 2000; y <= 2021; ++y) years.push_back(std::to_string(y));
  KnowledgeGraph g = deterministic_parse(t, "Country Name", years);
  FidelityReport r = evaluate(g, gold);
  EXPECT_DOUBLE_EQ(r.fc, 1.0);
  EXPECT_DOUBLE_EQ(r.ec, 1.0);
  EXPECT_DOUBLE_EQ(r.triple_recall, 1.0);
  EXPECT_DOUBLE_EQ(r.fc_value_first, 1.0);
}

TEST(DeterministicParse, DeletedCellsLowerFcExactly) {
  CsvTable t = testing::wide_matrix(60);
  GoldSet gold = generate_gold(t, "Country Name", 50, testing::standard_gold_years(), 42);
  for (std::size_t i = 0; i < 30; i += 3) t.rows[gold.facts[i].row][gold.facts[i].col].clear();
  KnowledgeGraph g = deterministic_parse(t, "Country Name", testing::standard_gold_years());
  FidelityReport r = fact_coverage(g, gold);
  EXPECT_NEAR(r.fc, 1.0 - 10.0 / 300.0, 1e-12);
  EXPECT_EQ(r.taxonomy_counts["value_missing"], 10u);
}

TEST(ValueFirst, RescuesDistantBinding) {
  KnowledgeGraph g;
  g.add_node({"Aruba", "Aruba", "", ""});
  g.add_node({"n1", "n1", "", ""});
  g.add_node({"n2", "n2", "", ""});
  g.add_node({"v", "v", "", "Aruba 2000: 7"});
  g.add_edge({"Aruba", "n1", "", ""});
  g.add_edge({"n1", "n2", "", ""});
  g.add_edge({"n2", "v", "", ""});
  ValueFirstResult vf = value_first_fc(g, OneFact("Aruba", "2000", "7"));
  EXPECT_DOUBLE_EQ(vf.fc, 1.0);
  ASSERT_EQ(vf.rescued.size(), 1u);
  EXPECT_TRUE(vf.lost.empty());
}

TEST(Triples, YearValueExtraction) {
  auto yv = extract_year_values("2000: 1.5, 2001=2, in 2002 3, 2003 2004, 12.2005: 4");
  ASSERT_EQ(yv.size(), 3u);
  EXPECT_EQ(yv[0].year, "2000");
  EXPECT_DOUBLE_EQ(yv[0].value, 1.5);
  EXPECT_EQ(yv[1].year, "2001");
  EXPECT_EQ(yv[2].year, "2002");
}

TEST(Triples, PrecisionRecall) {
  std::set<Triple> gold{{"a", "2000", "1"}, {"a", "2001", "2"}};
  std::set<Triple> sys{{"a", "2000", "1"}, {"a", "2002", "9"}, {"b", "2000", "1"}, {"c", "2000", "1"}};
  TripleScores s = triple_prf(gold, sys);
  EXPECT_DOUBLE_EQ(s.precision, 0.25);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_NEAR(s.f1, 1.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(triple_prf({}, {}).f1, 0.0);
}

}  // namespace
}  // namespace csvkg
