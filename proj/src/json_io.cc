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

#include "csvkg/json_io.h"

#include <fstream>
#include <sstream>

#include "csvkg/error.h"

namespace csvkg {

ojson to_json(const ColumnFeatures& f, const CsvTable& table) {
  auto labels = [&](const std::vector<std::size_t>& idx) {
    ojson a = ojson::array();
    for (std::size_t i : idx) a.push_back(table.header[i]);
    return a;
  };
  ojson j;
  j["time_cols"] = labels(f.time_cols);
  j["key_cols"] = labels(f.key_cols);
  j["n_numeric"] = f.n_numeric;
  j["fiscal"] = f.fiscal;
  j["transposed"] = f.transposed;
  j["year_in_body"] = f.year_in_body;
  return j;
}

ojson to_json(const Topology& t) {
  ojson j;
  j["tag"] = to_string(t.tag);
  j["rule_fired"] = t.rule_fired;
  const GuardTrace& g = t.guard_trace;
  j["guard_trace"] = {{"key_cols_ok", g.key_cols_ok},
                      {"has_numeric", g.has_numeric},
                      {"few_time_cols", g.few_time_cols},
                      {"deep_hierarchy", g.deep_hierarchy},
                      {"no_time_cols", g.no_time_cols},
                      {"transposed", g.transposed},
                      {"year_in_body", g.year_in_body},
                      {"fiscal", g.fiscal},
                      {"legacy", g.legacy}};
  if (t.override_) {
    j["override"] = {{"original", to_string(t.override_->original)},
                     {"reason", t.override_->reason},
                     {"no_op", t.override_->no_op}};
  }
  if (t.identifier_like_keys) j["identifier_like_keys"] = *t.identifier_like_keys;
  return j;
}

Topology topology_from_json(const ojson& j) {
  Topology t;
  t.tag = parse_topology_tag(j.at("tag").get<std::string>());
  t.rule_fired = j.value("rule_fired", "");
  if (j.contains("guard_trace")) {
    const ojson& g = j["guard_trace"];
    GuardTrace& r = t.guard_trace;
    r.key_cols_ok = g.value("key_cols_ok", false);
    r.has_numeric = g.value("has_numeric", false);
    r.few_time_cols = g.value("few_time_cols", false);
    r.deep_hierarchy = g.value("deep_hierarchy", false);
    r.no_time_cols = g.value("no_time_cols", false);
    r.transposed = g.value("transposed", false);
    r.year_in_body = g.value("year_in_body", false);
    r.fiscal = g.value("fiscal", false);
    r.legacy = g.value("legacy", false);
  }
  if (j.contains("override")) {
    const ojson& o = j["override"];
    t.override_ = TopologyOverride{
        parse_topology_tag(o.at("original").get<std::string>()),
        o.value("reason", ""), o.value("no_op", false)};
  }
  if (j.contains("identifier_like_keys"))
    t.identifier_like_keys =
        j["identifier_like_keys"].get<std::vector<std::string>>();
  return t;
}

ojson to_json(const MetaSchema& s) {
  ojson j;
  j["entity_types"] = ojson::array();
  for (const auto& e : s.entity_types) {
    ojson o;
    o["type_name"] = e.type_name;
    o["column_ref"] = e.column_ref ? ojson(*e.column_ref) : ojson(nullptr);
    o["semantic_description"] = e.semantic_description;
    o["kind"] = e.kind == EntityKind::kSubject ? "subject" : "value";
    o["mismatched"] = e.mismatched;
    j["entity_types"].push_back(o);
  }
  j["relation_templates"] = ojson::array();
  for (const auto& r : s.relation_templates) {
    j["relation_templates"].push_back({{"name", r.name},
                                       {"subject_type", r.subject_type},
                                       {"time_role", r.time_role},
                                       {"value_role", r.value_role}});
  }
  j["extraction_rules"] = s.extraction_rules;
  j["topology"] = to_json(s.topology);
  j["type_validity"] =
      s.type_validity == TypeValidity::kValid ? "valid" : "degraded";
  j["source_columns"] = s.source_columns;
  return j;
}

MetaSchema schema_from_json(const ojson& j) {
  try {
    MetaSchema s;
    for (const auto& o : j.at("entity_types")) {
      EntityType e;
      e.type_name = o.at("type_name").get<std::string>();
      if (o.contains("column_ref") && !o["column_ref"].is_null())
        e.column_ref = o["column_ref"].get<std::string>();
      e.semantic_description = o.value("semantic_description", "");
      std::string kind = o.value("kind", "subject");
      if (kind != "subject" && kind != "value")
        throw InvalidArgument("unknown entity kind: " + kind);
      e.kind = kind == "subject" ? EntityKind::kSubject : EntityKind::kValue;
      e.mismatched = o.value("mismatched", false);
      s.entity_types.push_back(std::move(e));
    }
    for (const auto& o : j.value("relation_templates", ojson::array())) {
      RelationTemplate r;
      r.name = o.at("name").get<std::string>();
      r.subject_type = o.value("subject_type", "");
      r.time_role = o.value("time_role", std::vector<std::string>{});
      r.value_role = o.value("value_role", "");
      s.relation_templates.push_back(std::move(r));
    }
    s.extraction_rules =
        j.value("extraction_rules", std::vector<std::string>{});
    if (j.contains("topology")) s.topology = topology_from_json(j["topology"]);
    std::string tv = j.value("type_validity", "valid");
    if (tv != "valid" && tv != "degraded")
      throw InvalidArgument("unknown type_validity: " + tv);
    s.type_validity =
        tv == "valid" ? TypeValidity::kValid : TypeValidity::kDegraded;
    s.source_columns = j.value("source_columns", std::vector<std::string>{});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed schema: ") + e.what(), 0);
  }
}

ojson to_json(const StructuralMetrics& m) {
  return {{"n_nodes", m.n_nodes},
          {"n_edges", m.n_edges},
          {"edge_node_ratio", m.edge_node_ratio},
          {"isolated_node_ratio", m.isolated_node_ratio}};
}

ojson to_json(const TripleScores& t) {
  return {{"precision", t.precision}, {"recall", t.recall}, {"f1", t.f1},
          {"n_gold", t.n_gold},       {"n_system", t.n_system},
          {"n_matched", t.n_matched}};
}

ojson to_json(const FidelityReport& r, bool with_outcomes) {
  ojson j;
  j["n_facts"] = r.n_facts;
  j["ec"] = r.ec;
  j["fc"] = r.fc;
  j["fc_value_first"] = r.fc_value_first;
  j["value_first_rescued"] = r.value_first_rescued;
  j["value_first_lost"] = r.value_first_lost;
  j["triple_precision"] = r.triple_precision;
  j["triple_recall"] = r.triple_recall;
  j["triple_f1"] = r.triple_f1;
  ojson tax = ojson::object();
  for (ErrorClass e : error_classes()) {
    auto it = r.taxonomy_counts.find(to_string(e));
    tax[to_string(e)] = it == r.taxonomy_counts.end() ? 0 : it->second;
  }
  j["taxonomy"] = tax;
  if (with_outcomes) {
    j["outcomes"] = ojson::array();
    for (const auto& o : r.outcomes) {
      j["outcomes"].push_back({{"subject", o.fact.subject},
                               {"time", o.fact.time},
                               {"value", o.fact.value},
                               {"covered", o.covered},
                               {"error_class", to_string(o.error_class)},
                               {"anchor_nodes", o.anchor_nodes}});
    }
  }
  return j;
}

ojson to_json(const InteractionResult& r) {
  return {{"delta_int", r.delta_int}, {"ci_low", r.ci_low},
          {"ci_high", r.ci_high},     {"n_resamples", r.n_resamples},
          {"seed", r.seed},           {"method", r.method}};
}

ojson to_json(const PermutationResult& r) {
  return {{"p", r.p},         {"effect_r", r.effect_r}, {"observed", r.observed},
          {"n", r.n},         {"n_perm", r.n_perm},     {"exact", r.exact}};
}

ojson to_json(const WilcoxonResult& r) {
  return {{"w_plus", r.w_plus},           {"z", r.z},
          {"p_two_sided", r.p_two_sided}, {"p_adjusted", r.p_adjusted},
          {"effect_r", r.effect_r},       {"n", r.n}};
}

ojson to_json(const FisherResult& r) {
  return {{"chi_square", r.chi_square}, {"df", r.df}, {"p", r.p}};
}

ojson to_json(const Provenance& p) {
  return {{"condition", p.condition_label},
          {"format", p.format},
          {"schema_used", p.schema_used},
          {"pre_guard", p.pre_guard},
          {"edge_node_ratio", p.edge_node_ratio},
          {"guard_decision", p.guard_decision},
          {"fallback_applied", p.fallback_applied},
          {"n_chunks", p.n_chunks},
          {"refusals", p.refusals},
          {"malformed", p.malformed}};
}

ojson to_json(const ExtractionEvent& e) {
  return {{"chunk_id", e.chunk_id}, {"kind", e.kind}, {"detail", e.detail}};
}

ojson to_json(const ProbeResult& r) {
  return {{"id", r.id},
          {"answer", r.answer},
          {"correct", r.correct},
          {"unreachable", r.unreachable},
          {"unreachable_entities", r.unreachable_entities}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << data;
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

ojson parse_json(const std::string& text, const std::string& what) {
  ojson j = ojson::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON in " + what, 0);
  return j;
}

}  // namespace csvkg
