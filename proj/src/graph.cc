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

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "csvkg/error.h"
#include "csvkg/schema.h"
#include "csvkg/text.h"

namespace csvkg {
namespace {

using ojson = nlohmann::ordered_json;

std::string AsText(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Copies known string fields and appends every other field to `extra`.
struct FieldReader {
  const ojson& obj;
  std::set<std::string> used;

  std::string get(std::initializer_list<const char*> keys,
                  const std::string& fallback = "") {
    for (const char* k : keys) {
      if (obj.contains(k)) {
        used.insert(k);
        return AsText(obj[k]);
      }
    }
    return fallback;
  }
  bool has(std::initializer_list<const char*> keys) const {
    for (const char* k : keys)
      if (obj.contains(k)) return true;
    return false;
  }
  std::string extra() const {
    std::string out;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (used.count(it.key())) continue;
      out += "\n" + it.key() + ": " + AsText(it.value());
    }
    return out;
  }
};

Node ReadNode(const ojson& o, std::initializer_list<const char*> id_keys,
              std::initializer_list<const char*> name_keys,
              std::initializer_list<const char*> type_keys,
              const std::string& where) {
  if (!o.is_object()) throw GraphError("node record is not an object " + where);
  FieldReader r{o, {}};
  if (!r.has(id_keys)) throw GraphError("node without id " + where);
  Node n;
  n.id = r.get(id_keys);
  n.name = r.get(name_keys, n.id);
  n.type = r.get(type_keys);
  n.description = r.get({"description"});
  n.description += r.extra();
  return n;
}

Edge ReadEdge(const ojson& o, std::initializer_list<const char*> src_keys,
              std::initializer_list<const char*> dst_keys,
              const std::string& where) {
  if (!o.is_object()) throw GraphError("edge record is not an object " + where);
  FieldReader r{o, {}};
  if (!r.has(src_keys) || !r.has(dst_keys))
    throw GraphError("edge without endpoints " + where);
  Edge e;
  e.src = r.get(src_keys);
  e.dst = r.get(dst_keys);
  e.keywords = r.get({"keywords"});
  e.description = r.get({"description"});
  e.description += r.extra();
  return e;
}

KnowledgeGraph Build(std::vector<Node> nodes, std::vector<Edge> edges) {
  KnowledgeGraph g;
  for (auto& n : nodes) g.add_node(std::move(n));
  for (auto& e : edges) g.add_edge(std::move(e));
  return g;
}

KnowledgeGraph ParseNative(const std::string& input) {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::istringstream in(input);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::Trim(line).empty()) continue;
    ojson o = ojson::parse(line, nullptr, false);
    const std::string where = "at line " + std::to_string(lineno);
    if (o.is_discarded() || !o.is_object())
      throw ParseError("malformed graph record", lineno);
    if (o.contains("node"))
      nodes.push_back(ReadNode(o["node"], {"id"}, {"name"}, {"type"}, where));
    else if (o.contains("edge"))
      edges.push_back(ReadEdge(o["edge"], {"src"}, {"dst"}, where));
    else
      throw ParseError("record is neither node nor edge", lineno);
  }
  return Build(std::move(nodes), std::move(edges));
}

KnowledgeGraph ParseExport(const std::string& input, GraphDialect d) {
  ojson doc = ojson::parse(input, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw ParseError("export is not a JSON object", 1);
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  const bool lr = d == GraphDialect::kLightRagExport;
  const char* ents = "entities";
  const char* rels = doc.contains("relationships") ? "relationships"
                                                   : "relations";
  if (doc.contains(ents)) {
    if (!doc[ents].is_array()) throw ParseError("entities is not an array", 1);
    std::size_t i = 0;
    for (const auto& o : doc[ents]) {
      std::string where = "in entities[" + std::to_string(i++) + "]";
      if (lr)
        nodes.push_back(ReadNode(o, {"entity_name", "id"}, {"name"},
                                 {"entity_type", "type"}, where));
      else
        nodes.push_back(ReadNode(o, {"title", "name"}, {"name"}, {"type"},
                                 where));
    }
  }
  if (doc.contains(rels)) {
    if (!doc[rels].is_array()) throw ParseError("relations is not an array", 1);
    std::size_t i = 0;
    for (const auto& o : doc[rels]) {
      std::string where = "in " + std::string(rels) + "[" +
                          std::to_string(i++) + "]";
      if (lr)
        edges.push_back(ReadEdge(o, {"src_id", "source"}, {"tgt_id", "target"},
                                 where));
      else
        edges.push_back(ReadEdge(o, {"source"}, {"target"}, where));
    }
  }
  return Build(std::move(nodes), std::move(edges));
}

}  // namespace

std::size_t KnowledgeGraph::add_node(Node node) {
  if (index_.count(node.id)) throw GraphError("duplicate node id: " + node.id);
  std::size_t i = nodes_.size();
  index_.emplace(node.id, i);
  nodes_.push_back(std::move(node));
  incident_.emplace_back();
  return i;
}

std::size_t KnowledgeGraph::add_edge(Edge edge) {
  auto s = index_.find(edge.src);
  if (s == index_.end())
    throw GraphError("edge endpoint does not exist: " + edge.src);
  auto d = index_.find(edge.dst);
  if (d == index_.end())
    throw GraphError("edge endpoint does not exist: " + edge.dst);
  std::size_t e = edges_.size();
  edges_.push_back(std::move(edge));
  edge_ends_.emplace_back(s->second, d->second);
  incident_[s->second].push_back(e);
  if (d->second != s->second) incident_[d->second].push_back(e);
  return e;
}

bool KnowledgeGraph::has_node(const std::string& id) const {
  return index_.count(id) > 0;
}

std::size_t KnowledgeGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw GraphError("unknown node id: " + id);
  return it->second;
}

std::size_t KnowledgeGraph::other_end(std::size_t e, std::size_t from) const {
  const auto& ends = edge_ends_[e];
  return ends.first == from ? ends.second : ends.first;
}

bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
  if (a.nodes().size() != b.nodes().size() ||
      a.edges().size() != b.edges().size())
    return false;
  for (std::size_t i = 0; i < a.nodes().size(); ++i) {
    const Node &x = a.nodes()[i], &y = b.nodes()[i];
    if (x.id != y.id || x.name != y.name || x.type != y.type ||
        x.description != y.description)
      return false;
  }
  for (std::size_t i = 0; i < a.edges().size(); ++i) {
    const Edge &x = a.edges()[i], &y = b.edges()[i];
    if (x.src != y.src || x.dst != y.dst || x.description != y.description ||
        x.keywords != y.keywords)
      return false;
  }
  return true;
}

std::string to_string(GraphDialect d) {
  switch (d) {
    case GraphDialect::kNativeJsonl: return "native-jsonl";
    case GraphDialect::kLightRagExport: return "lightrag-export";
    case GraphDialect::kGraphRagExport: return "graphrag-export";
  }
  return "native-jsonl";
}

GraphDialect parse_graph_dialect(const std::string& s) {
  for (GraphDialect d : {GraphDialect::kNativeJsonl,
                         GraphDialect::kLightRagExport,
                         GraphDialect::kGraphRagExport})
    if (to_string(d) == s) return d;
  throw InvalidArgument("unknown graph dialect: " + s);
}

KnowledgeGraph ingest_graph_text(const std::string& input,
                                 GraphDialect dialect) {
  if (dialect == GraphDialect::kNativeJsonl) return ParseNative(input);
  return ParseExport(input, dialect);
}

KnowledgeGraph ingest_graph(const std::string& path, GraphDialect dialect) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ingest_graph_text(ss.str(), dialect);
}

std::string export_native(const KnowledgeGraph& g) {
  std::string out;
  for (const auto& n : g.nodes()) {
    ojson o;
    o["node"]["id"] = n.id;
    o["node"]["name"] = n.name;
    o["node"]["type"] = n.type;
    o["node"]["description"] = n.description;
    out += o.dump() + "\n";
  }
  for (const auto& e : g.edges()) {
    ojson o;
    o["edge"]["src"] = e.src;
    o["edge"]["dst"] = e.dst;
    o["edge"]["description"] = e.description;
    o["edge"]["keywords"] = e.keywords;
    out += o.dump() + "\n";
  }
  return out;
}

StructuralMetrics structural_metrics(const KnowledgeGraph& g) {
  StructuralMetrics m;
  m.n_nodes = g.nodes().size();
  m.n_edges = g.edges().size();
  if (m.n_nodes == 0) return m;
  std::size_t isolated = 0;
  for (std::size_t i = 0; i < m.n_nodes; ++i)
    if (g.degree(i) == 0) ++isolated;
  m.edge_node_ratio = static_cast<double>(m.n_edges) / m.n_nodes;
  m.isolated_node_ratio = static_cast<double>(isolated) / m.n_nodes;
  return m;
}

std::string to_string(GuardDecision d) {
  switch (d) {
    case GuardDecision::kProceed: return "proceed";
    case GuardDecision::kFallback: return "fallback";
    case GuardDecision::kSkipSchema: return "skip_schema";
  }
  return "proceed";
}

void validate(const GuardConfig& c) {
  if (!(c.theta > 0.0 && c.theta < 2.0))
    throw InvalidArgument("theta must lie in (0, 2)");
}

GuardDecision pre_extraction_guard(TopologyTag tag, std::size_t n_rows,
                                   const GuardConfig& c) {
  validate(c);
  if (c.skip_small_type3 && tag == TopologyTag::kTypeIII &&
      n_rows < c.small_table_rows)
    return GuardDecision::kSkipSchema;
  return GuardDecision::kProceed;
}

GuardDecision degradation_guard(double ratio, double theta) {
  GuardConfig c;
  c.theta = theta;
  validate(c);
  return ratio < theta ? GuardDecision::kFallback : GuardDecision::kProceed;
}

GuardDecision degradation_guard(const StructuralMetrics& m, TopologyTag tag,
                                std::size_t n_rows, const GuardConfig& c) {
  GuardDecision pre = pre_extraction_guard(tag, n_rows, c);
  if (pre != GuardDecision::kProceed) return pre;
  return degradation_guard(m.edge_node_ratio, c.theta);
}

KnowledgeGraph deterministic_parse(const CsvTable& table,
                                   const std::string& subject_col,
                                   const std::vector<std::string>& time_cols) {
  const std::size_t sc = table.column_index(subject_col);
  if (sc == CsvTable::npos)
    throw InvalidArgument("unknown subject column: " + subject_col);
  std::vector<std::size_t> tcs;
  for (const auto& t : time_cols) {
    std::size_t c = table.column_index(t);
    if (c == CsvTable::npos)
      throw InvalidArgument("unknown time column: " + t);
    tcs.push_back(c);
  }
  const std::string subject_type = type_name_for(subject_col);
  KnowledgeGraph g;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    std::string subject(text::Trim(table.rows[r][sc]));
    if (subject.empty()) continue;
    if (!g.has_node(subject))
      g.add_node({subject, subject, subject_type,
                  subject_col + ": " + subject});
    for (std::size_t c : tcs) {
      const std::string& value = table.rows[r][c];
      if (text::Trim(value).empty()) continue;
      const std::string& time = table.header[c];
      const std::string binding = time + ": " + value;
      std::string id = subject + " " + time;
      if (g.has_node(id)) id += " (row " + std::to_string(r) + ")";
      g.add_node({id, id, "StatValue", binding});
      g.add_edge({subject, id, binding, time});
    }
  }
  return g;
}

}  // namespace csvkg
