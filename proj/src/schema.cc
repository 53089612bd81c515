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

#include "csvkg/schema.h"

#include <algorithm>
#include <set>

#include "csvkg/error.h"
#include "csvkg/prng.h"
#include "csvkg/text.h"

namespace csvkg {
namespace {

constexpr const char* kStatValue = "StatValue";

std::string Quoted(const std::string& s) { return "\"" + s + "\""; }

std::string ListLabels(const std::vector<std::string>& labels) {
  std::vector<std::string> q;
  q.reserve(labels.size());
  for (const auto& l : labels) q.push_back(Quoted(l));
  return text::Join(q, ", ");
}

bool HasLabel(const std::vector<std::string>& header, const std::string& l) {
  return std::find(header.begin(), header.end(), l) != header.end();
}

void RenameSubject(MetaSchema& s, const std::string& new_name) {
  const std::string old = s.entity_types[0].type_name;
  s.entity_types[0].type_name = new_name;
  for (auto& r : s.relation_templates)
    if (r.subject_type == old) r.subject_type = new_name;
}

}  // namespace

bool operator==(const EntityType& a, const EntityType& b) {
  return a.type_name == b.type_name && a.column_ref == b.column_ref &&
         a.semantic_description == b.semantic_description &&
         a.kind == b.kind && a.mismatched == b.mismatched;
}

bool operator==(const RelationTemplate& a, const RelationTemplate& b) {
  return a.name == b.name && a.subject_type == b.subject_type &&
         a.time_role == b.time_role && a.value_role == b.value_role;
}

bool operator==(const MetaSchema& a, const MetaSchema& b) {
  return a.entity_types == b.entity_types &&
         a.relation_templates == b.relation_templates &&
         a.extraction_rules == b.extraction_rules &&
         a.topology.tag == b.topology.tag &&
         a.type_validity == b.type_validity &&
         a.source_columns == b.source_columns;
}

std::string type_name_for(const std::string& column_label) {
  std::string out = std::string(text::Trim(column_label));
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

MetaSchema induce_schema(const CsvTable& table, const Topology& topology) {
  return induce_schema(table, topology, extract_features(table));
}

MetaSchema induce_schema(const CsvTable& table, const Topology& topology,
                         const ColumnFeatures& features) {
  if (topology.tag == TopologyTag::kTypeI)
    throw UnsupportedTopology("schema induction requires TypeII or TypeIII");

  MetaSchema s;
  s.topology = topology;
  s.source_columns = table.header;

  std::vector<std::string> time_labels;
  for (std::size_t c : features.time_cols)
    time_labels.push_back(table.header[c]);
  std::set<std::size_t> keys(features.key_cols.begin(),
                             features.key_cols.end());
  std::set<std::size_t> times(features.time_cols.begin(),
                              features.time_cols.end());

  for (std::size_t c : features.key_cols) {
    const std::string& label = table.header[c];
    EntityType e;
    e.type_name = type_name_for(label);
    e.column_ref = label;
    e.semantic_description = "Row identifier taken verbatim from column " +
                             Quoted(label) + ".";
    s.entity_types.push_back(std::move(e));
  }
  if (s.entity_types.empty()) {
    EntityType e;
    e.type_name = "Series";
    e.semantic_description = "The statistical series described by each row.";
    s.entity_types.push_back(std::move(e));
  }
  const std::string subject = s.entity_types[0].type_name;
  const std::string anchor =
      s.entity_types[0].column_ref ? *s.entity_types[0].column_ref : "";

  if (topology.tag == TopologyTag::kTypeII) {
    RelationTemplate r;
    r.name = "has_value_in_year";
    r.subject_type = subject;
    r.time_role = time_labels;
    r.value_role = kStatValue;
    s.relation_templates.push_back(std::move(r));
    if (!anchor.empty())
      s.extraction_rules.push_back("Create exactly one " + subject +
                                   " entity per row, named by the value of "
                                   "column " + Quoted(anchor) + ".");
    if (!time_labels.empty())
      s.extraction_rules.push_back(
          "For every non-empty cell in the year columns " +
          ListLabels(time_labels) +
          ", create a relationship from the row entity whose description is "
          "\"<year>: <value>\".");
  } else {
    EntityType v;
    v.type_name = kStatValue;
    v.kind = EntityKind::kValue;
    v.semantic_description = "A numeric statistic reported for one row.";
    s.entity_types.push_back(std::move(v));

    std::vector<std::string> value_labels;
    for (std::size_t c = 0; c < table.n_cols(); ++c) {
      if (keys.count(c) || times.count(c)) continue;
      if (features.numeric_fractions.size() > c &&
          features.numeric_fractions[c] >= 0.6)
        value_labels.push_back(table.header[c]);
    }
    if (!time_labels.empty()) {
      RelationTemplate r;
      r.name = "has_value_in_year";
      r.subject_type = subject;
      r.time_role = time_labels;
      r.value_role = kStatValue;
      s.relation_templates.push_back(std::move(r));
    }
    for (const auto& label : value_labels) {
      RelationTemplate r;
      r.name = "has_" + type_name_for(label);
      r.subject_type = subject;
      r.value_role = label;
      s.relation_templates.push_back(std::move(r));
    }
    std::vector<std::string> key_labels;
    for (std::size_t c : features.key_cols) key_labels.push_back(table.header[c]);
    s.extraction_rules.push_back(
        "Create one entity per distinct value of each key column " +
        ListLabels(key_labels) + "; keep the hierarchy order.");
    if (!anchor.empty())
      s.extraction_rules.push_back("Anchor every statistic on the " + subject +
                                   " entity named by column " +
                                   Quoted(anchor) + ".");
    std::vector<std::string> roles = value_labels;
    roles.insert(roles.end(), time_labels.begin(), time_labels.end());
    if (!roles.empty())
      s.extraction_rules.push_back(
          "For every non-empty cell in " + ListLabels(roles) +
          ", create a StatValue relationship whose description is "
          "\"<column>: <value>\".");
  }
  s.extraction_rules.push_back("Copy numeric values verbatim; never round.");
  s.extraction_rules.push_back(
      "Skip empty cells; do not invent values for them.");

  s.type_validity = TypeValidity::kValid;
  for (const auto& e : s.entity_types)
    if (e.kind == EntityKind::kSubject && !e.column_ref)
      s.type_validity = TypeValidity::kDegraded;
  return s;
}

double compute_scs(const MetaSchema& schema, const CsvTable& table) {
  if (table.n_cols() == 0) return 0.0;
  std::set<std::string> mapped;
  auto add = [&](const std::string& label) {
    if (table.column_index(label) != CsvTable::npos) mapped.insert(label);
  };
  for (const auto& e : schema.entity_types)
    if (e.column_ref) add(*e.column_ref);
  for (const auto& r : schema.relation_templates) {
    for (const auto& t : r.time_role) add(t);
    add(r.value_role);
  }
  double coverage = static_cast<double>(mapped.size()) / table.n_cols();
  double factor = schema.type_validity == TypeValidity::kValid ? 1.0 : 0.7;
  return coverage * factor;
}

std::string to_string(Perturbation p) {
  switch (p) {
    case Perturbation::kAX: return "AX";
    case Perturbation::kBX1: return "BX-1";
    case Perturbation::kBX2: return "BX-2";
    case Perturbation::kBX3: return "BX-3";
    case Perturbation::kAY1: return "AY-1";
    case Perturbation::kAY2: return "AY-2";
    case Perturbation::kAY3: return "AY-3";
    case Perturbation::kAY3d: return "AY-3d";
    case Perturbation::kAY3e: return "AY-3e";
    case Perturbation::kAY3f: return "AY-3f";
    case Perturbation::kBY: return "BY";
    case Perturbation::kC1: return "C1";
    case Perturbation::kD1: return "D1";
    case Perturbation::kD2: return "D2";
    case Perturbation::kD3: return "D3";
  }
  return "AX";
}

const std::vector<Perturbation>& all_perturbations() {
  static const std::vector<Perturbation> all = {
      Perturbation::kAX,  Perturbation::kBX1,  Perturbation::kBX2,
      Perturbation::kBX3, Perturbation::kAY1,  Perturbation::kAY2,
      Perturbation::kAY3, Perturbation::kAY3d, Perturbation::kAY3e,
      Perturbation::kAY3f, Perturbation::kBY,  Perturbation::kC1,
      Perturbation::kD1,  Perturbation::kD2,   Perturbation::kD3};
  return all;
}

Perturbation parse_perturbation(const std::string& s) {
  for (Perturbation p : all_perturbations())
    if (to_string(p) == s) return p;
  throw InvalidArgument("unknown perturbation condition: " + s);
}

MetaSchema perturb_schema(const MetaSchema& schema,
                          const SchemaPerturbation& pert,
                          const std::vector<std::string>& header) {
  MetaSchema s = schema;
  if (pert.condition == Perturbation::kAX) return s;
  if (s.entity_types.empty())
    throw InvalidArgument("schema has no entity types to perturb");
  EntityType& target = s.entity_types[0];
  auto value_or = [&](const char* fallback) {
    return pert.value.empty() ? std::string(fallback) : pert.value;
  };

  switch (pert.condition) {
    case Perturbation::kAX:
      break;
    case Perturbation::kBX1:
      RenameSubject(s, value_or("Nation_Identifier"));
      break;
    case Perturbation::kBX2:
      RenameSubject(s, value_or("GeopoliticalEntity"));
      break;
    case Perturbation::kBX3:
      RenameSubject(s, value_or("RowKey_Alpha3"));
      break;
    case Perturbation::kAY1:
      target.semantic_description = value_or("represents measurement year");
      break;
    case Perturbation::kAY2:
      target.semantic_description = value_or("represents disease class code");
      break;
    case Perturbation::kAY3: {
      const std::string label = pert.value;
      if (label.empty())
        throw InvalidArgument("AY-3 requires an existing column label");
      if (!HasLabel(header, label))
        throw InvalidArgument("AY-3 label " + Quoted(label) +
                              " is not a column of the table");
      if (target.column_ref && *target.column_ref == label)
        throw InvalidArgument("AY-3 label must differ from the current "
                              "column reference");
      target.column_ref = label;
      target.mismatched = true;
      break;
    }
    case Perturbation::kAY3d:
      target.column_ref.reset();
      break;
    case Perturbation::kAY3e:
      target.column_ref = value_or("the first text column");
      target.mismatched = true;
      break;
    case Perturbation::kAY3f: {
      std::string label = value_or("Disease_Category");
      if (HasLabel(header, label))
        throw InvalidArgument("AY-3f label " + Quoted(label) +
                              " exists in the table; use AY-3");
      target.column_ref = label;
      target.mismatched = true;
      break;
    }
    case Perturbation::kBY:
      RenameSubject(s, value_or("Nation_Identifier"));
      s.entity_types[0].semantic_description =
          pert.value2.empty() ? "represents disease class code" : pert.value2;
      break;
    case Perturbation::kC1:
      if (s.relation_templates.empty())
        throw InvalidArgument("C1 requires a relation template");
      for (auto& r : s.relation_templates) {
        if (!pert.value.empty())
          r.name = pert.value;
        else
          r.name = text::ReplaceAll(r.name, "year", "period");
      }
      break;
    case Perturbation::kD1: {
      Rng rng(pert.seed);
      for (auto& r : s.relation_templates) rng.Shuffle(r.time_role);
      break;
    }
    case Perturbation::kD2:
      if (!target.column_ref)
        throw InvalidArgument("D2 requires a column reference");
      target.column_ref = target.column_ref->substr(
          0, std::min<std::size_t>(3, target.column_ref->size()));
      target.mismatched = !HasLabel(header, *target.column_ref);
      break;
    case Perturbation::kD3:
      // Input-side condition (row delimiters removed in serialization).
      break;
  }
  return s;
}

std::string to_string(HostDialect d) {
  return d == HostDialect::kLightRag ? "lightrag-style" : "graphrag-style";
}

HostDialect parse_dialect(const std::string& s) {
  if (s == "lightrag-style" || s == "lightrag") return HostDialect::kLightRag;
  if (s == "graphrag-style" || s == "graphrag") return HostDialect::kGraphRag;
  throw InvalidArgument("unknown host dialect: " + s);
}

DialectTokens dialect_tokens(HostDialect d) {
  DialectTokens t;
  t.tuple_delimiter = d == HostDialect::kLightRag ? "<|#|>" : "<|>";
  t.record_delimiter = "##";
  t.completion_delimiter = "<|COMPLETE|>";
  return t;
}

const std::vector<std::string>& default_entity_types() {
  static const std::vector<std::string> types = {"organization", "person",
                                                 "geo", "event"};
  return types;
}

const std::vector<std::string>& default_extraction_rules() {
  static const std::vector<std::string> rules = {
      "Extract entities and relationships only from the input text.",
      "Use the entity name exactly as it appears in the text.",
      "Describe each entity and relationship using only facts stated in the "
      "text."};
  return rules;
}

namespace {

std::string RenderPrompt(const std::vector<std::string>& type_lines,
                         const std::vector<std::string>& rules,
                         HostDialect dialect) {
  const DialectTokens t = dialect_tokens(dialect);
  std::string p;
  p += "-Goal-\n";
  p += "Given a text document and a list of entity types, identify all "
       "entities of those types in the text and all relationships among the "
       "identified entities.\n\n";
  p += "-Entity Types-\n";
  for (const auto& l : type_lines) p += "- " + l + "\n";
  p += "\n-Extraction Rules-\n";
  for (std::size_t i = 0; i < rules.size(); ++i)
    p += std::to_string(i + 1) + ". " + rules[i] + "\n";
  p += "\n-Steps-\n";
  p += "1. Identify all entities. For each entity output (\"entity\"" +
       t.tuple_delimiter + "<entity_name>" + t.tuple_delimiter +
       "<entity_type>" + t.tuple_delimiter + "<entity_description>)\n";
  p += "2. Identify all pairs of related entities. For each pair output "
       "(\"relationship\"" + t.tuple_delimiter + "<source_entity>" +
       t.tuple_delimiter + "<target_entity>" + t.tuple_delimiter +
       "<relationship_description>" + t.tuple_delimiter +
       "<relationship_keywords>)\n";
  p += "3. Return all entities and relationships as one list separated by " +
       t.record_delimiter + ".\n";
  p += "4. When finished, output " + t.completion_delimiter + "\n";
  p += "\n-Input Text-\n";
  return p;
}

}  // namespace

std::string render_default_prompt(HostDialect dialect) {
  return RenderPrompt(default_entity_types(), default_extraction_rules(),
                      dialect);
}

std::string render_schema_prompt(const MetaSchema& schema,
                                 HostDialect dialect) {
  std::vector<std::string> lines;
  for (const auto& e : schema.entity_types) {
    std::string l = e.type_name;
    if (e.column_ref) l += " (column " + Quoted(*e.column_ref) + ")";
    if (!e.semantic_description.empty()) l += ": " + e.semantic_description;
    lines.push_back(std::move(l));
  }
  const auto& rules = schema.extraction_rules.empty()
                          ? default_extraction_rules()
                          : schema.extraction_rules;
  return RenderPrompt(lines, rules, dialect);
}

std::string render_chunk_prompt(const std::string& prompt,
                                const std::string& chunk_text) {
  return prompt + chunk_text + "\n\nOutput:\n";
}

}  // namespace csvkg
