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

#include "csvkg/graph.h"

#include <gtest/gtest.h>

#include "csvkg/error.h"
#include "support/fixtures.h"

namespace csvkg {
namespace {

KnowledgeGraph Triangle() {
  KnowledgeGraph g;
  g.add_node({"a", "A", "T", ""});
  g.add_node({"b", "B", "T", ""});
  g.add_node({"c", "C", "T", ""});
  g.add_node({"d", "D", "T", ""});
  g.add_edge({"a", "b", "", ""});
  g.add_edge({"b", "c", "", ""});
  g.add_edge({"c", "c", "", ""});
  return g;
}

TEST(Graph, AdjacencyAndErrors) {
  KnowledgeGraph g = Triangle();
  EXPECT_EQ(g.degree(g.index_of("b")), 2u);
  EXPECT_EQ(g.degree(g.index_of("c")), 2u);
  EXPECT_EQ(g.degree(g.index_of("d")), 0u);
  EXPECT_EQ(g.other_end(0, g.index_of("a")), g.index_of("b"));
  EXPECT_THROW(g.add_node({"a", "", "", ""}), GraphError);
  EXPECT_THROW(g.add_edge({"a", "zz", "", ""}), GraphError);
  EXPECT_THROW(g.index_of("zz"), GraphError);
}

TEST(Graph, StructuralMetrics) {
  StructuralMetrics m = structural_metrics(Triangle());
  EXPECT_EQ(m.n_nodes, 4u);
  EXPECT_EQ(m.n_edges, 3u);
  EXPECT_DOUBLE_EQ(m.edge_node_ratio, 0.75);
  EXPECT_DOUBLE_EQ(m.isolated_node_ratio, 0.25);
  EXPECT_DOUBLE_EQ(structural_metrics(KnowledgeGraph{}).edge_node_ratio, 0.0);
}

TEST(Ingest, NativeRoundTrip) {
  KnowledgeGraph g = Triangle();
  g.mutable_node(0).description = "line one\nline \"two\"";
  KnowledgeGraph back = ingest_graph_text(export_native(g), GraphDialect::kNativeJsonl);
  EXPECT_TRUE(back == g);
  EXPECT_EQ(export_native(back), export_native(g));
}

TEST(Ingest, NativeErrorsCarryLine) {
  try {
    ingest_graph_text("{\"node\":{\"id\":\"a\"}}\n{oops\n", GraphDialect::kNativeJsonl);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ingest_graph_text("{\"node\":{\"id\":\"a\"}}\n{\"edge\":{\"src\":\"a\",\"dst\":\"b\"}}\n",
                                 GraphDialect::kNativeJsonl),
               GraphError);
}

TEST(Ingest, LightRagExportKeepsExtraFields) {
  const std::string doc = R"({
    "entities": [
      {"entity_name": "Aruba", "entity_type": "Country", "description": "island", "source_id": "chunk-0001"},
      {"entity_name": "Aruba 2000", "entity_type": "StatValue", "description": "2000: 90.5"}
    ],
    "relationships": [
      {"src_id": "Aruba", "tgt_id": "Aruba 2000", "description": "2000: 90.5", "keywords": "2000", "weight": 1.0}
    ]})";
  KnowledgeGraph g = ingest_graph_text(doc, GraphDialect::kLightRagExport);
  ASSERT_EQ(g.nodes().size(), 2u);
  EXPECT_EQ(g.nodes()[0].type, "Country");
  EXPECT_NE(g.nodes()[0].description.find("source_id: chunk-0001"), std::string::npos);
  ASSERT_EQ(g.edges().size(), 1u);
  EXPECT_EQ(g.edges()[0].keywords, "2000");
  EXPECT_NE(g.edges()[0].description.find("weight"), std::string::npos);
}

TEST(Ingest, GraphRagExport) {
  const std::string doc = R"({
    "entities": [{"title": "X", "type": "ORG"}, {"title": "Y", "type": "ORG"}],
    "relationships": [{"source": "X", "target": "Y", "description": "owns"}]})";
  KnowledgeGraph g = ingest_graph_text(doc, GraphDialect::kGraphRagExport);
  EXPECT_EQ(g.nodes()[1].name, "Y");
  EXPECT_EQ(g.edges()[0].description, "owns");
  EXPECT_THROW(ingest_graph_text("[]", GraphDialect::kGraphRagExport), ParseError);
  EXPECT_EQ(parse_graph_dialect("lightrag-export"), GraphDialect::kLightRagExport);
  EXPECT_THROW(parse_graph_dialect("neo4j"), InvalidArgument);
}

TEST(Guard, Thresholds) {
  EXPECT_EQ(degradation_guard(0.793, 0.90), GuardDecision::kFallback);
  EXPECT_EQ(degradation_guard(0.943, 0.90), GuardDecision::kProceed);
  EXPECT_EQ(degradation_guard(0.90, 0.90), GuardDecision::kProceed);
  EXPECT_THROW(degradation_guard(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(degradation_guard(1.0, 2.0), InvalidArgument);
}

TEST(Guard, SmallTypeIIISkipsSchema) {
  EXPECT_EQ(pre_extraction_guard(TopologyTag::kTypeIII, 19), GuardDecision::kSkipSchema);
  EXPECT_EQ(pre_extraction_guard(TopologyTag::kTypeIII, 20), GuardDecision::kProceed);
  EXPECT_EQ(pre_extraction_guard(TopologyTag::kTypeII, 5), GuardDecision::kProceed);
  GuardConfig off;
  off.skip_small_type3 = false;
  EXPECT_EQ(pre_extraction_guard(TopologyTag::kTypeIII, 5, off), GuardDecision::kProceed);
  StructuralMetrics m;
  m.edge_node_ratio = 0.5;
  EXPECT_EQ(degradation_guard(m, TopologyTag::kTypeIII, 10), GuardDecision::kSkipSchema);
  EXPECT_EQ(degradation_guard(m, TopologyTag::kTypeII, 10), GuardDecision::kFallback);
}

TEST(DeterministicParse, StarPerEntity) {
  CsvTable t = testing::wide_matrix(10);
  KnowledgeGraph g = deterministic_parse(t, "Country Name", {"2000", "2001"});
  EXPECT_EQ(g.nodes().size(), 30u);
  EXPECT_EQ(g.edges().size(), 20u);
  const Node& v = g.nodes()[g.index_of(t.rows[0][0] + " 2001")];
  EXPECT_EQ(v.description, "2001: " + t.rows[0][t.column_index("2001")]);
  EXPECT_THROW(deterministic_parse(t, "Country Name", {"1999"}), InvalidArgument);
}

}  // namespace
}  // namespace csvkg
