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

#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "csvkg/table.h"
#include "csvkg/topology.h"

namespace csvkg {

struct Node {
  std::string id;
  std::string name;
  std::string type;
  std::string description;
};

struct Edge {
  std::string src;
  std::string dst;
  std::string description;
  std::string keywords;
};

class KnowledgeGraph {
 public:
  // Throws GraphError on a duplicate id.
  std::size_t add_node(Node node);
  // Throws GraphError when an endpoint does not exist.
  std::size_t add_edge(Edge edge);

  bool has_node(const std::string& id) const;
  // Index of a node id; throws GraphError if absent.
  std::size_t index_of(const std::string& id) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Node& mutable_node(std::size_t i) { return nodes_[i]; }

  // Edge indices incident to node i (self-loops listed once).
  const std::vector<std::size_t>& incident(std::size_t i) const {
    return incident_[i];
  }
  std::size_t edge_src(std::size_t e) const { return edge_ends_[e].first; }
  std::size_t edge_dst(std::size_t e) const { return edge_ends_[e].second; }
  std::size_t other_end(std::size_t e, std::size_t from) const;
  std::size_t degree(std::size_t i) const { return incident_[i].size(); }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::pair<std::size_t, std::size_t>> edge_ends_;
  std::vector<std::vector<std::size_t>> incident_;
  std::unordered_map<std::string, std::size_t> index_;
};

bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b);

enum class GraphDialect { kNativeJsonl, kLightRagExport, kGraphRagExport };

std::string to_string(GraphDialect d);
GraphDialect parse_graph_dialect(const std::string& s);

KnowledgeGraph ingest_graph(const std::string& path, GraphDialect dialect);
KnowledgeGraph ingest_graph_text(const std::string& text, GraphDialect dialect);
std::string export_native(const KnowledgeGraph& graph);

struct StructuralMetrics {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  double edge_node_ratio = 0.0;
  double isolated_node_ratio = 0.0;
};

StructuralMetrics structural_metrics(const KnowledgeGraph& graph);

enum class GuardDecision { kProceed, kFallback, kSkipSchema };

std::string to_string(GuardDecision d);

struct GuardConfig {
  double theta = 0.90;
  bool skip_small_type3 = true;
  std::size_t small_table_rows = 20;
};

void validate(const GuardConfig& config);

// Pre-extraction path: skip_schema for small Type-III tables, else proceed.
GuardDecision pre_extraction_guard(TopologyTag tag, std::size_t n_rows,
                                   const GuardConfig& config = {});

// Full guard: pre-extraction check first, then fallback iff e/n < theta.
GuardDecision degradation_guard(const StructuralMetrics& metrics,
                                TopologyTag tag, std::size_t n_rows,
                                const GuardConfig& config = {});

// Edge/node ratio only.
GuardDecision degradation_guard(double edge_node_ratio, double theta);

// One node per subject; per non-empty (subject, time) cell a value node
// "<subject> <time>" (type StatValue) linked from the subject by an edge
// whose description is "<time>: <value>".
KnowledgeGraph deterministic_parse(const CsvTable& table,
                                   const std::string& subject_col,
                                   const std::vector<std::string>& time_cols);

}  // namespace csvkg
