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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csvkg/table.h"
#include "csvkg/topology.h"

namespace csvkg {

enum class EntityKind { kSubject, kValue };

struct EntityType {
  std::string type_name;
  std::optional<std::string> column_ref;
  std::string semantic_description;
  EntityKind kind = EntityKind::kSubject;
  // Set by perturbations that point column_ref away from a real label.
  bool mismatched = false;
};

struct RelationTemplate {
  std::string name;
  std::string subject_type;
  std::vector<std::string> time_role;  // column labels
  std::string value_role;              // column label or value type name
};

enum class TypeValidity { kValid, kDegraded };

struct MetaSchema {
  std::vector<EntityType> entity_types;
  std::vector<RelationTemplate> relation_templates;
  std::vector<std::string> extraction_rules;
  Topology topology;
  TypeValidity type_validity = TypeValidity::kValid;
  std::vector<std::string> source_columns;
};

bool operator==(const EntityType& a, const EntityType& b);
bool operator==(const RelationTemplate& a, const RelationTemplate& b);
bool operator==(const MetaSchema& a, const MetaSchema& b);

// Column label to type name: spaces become underscores.
std::string type_name_for(const std::string& column_label);

MetaSchema induce_schema(const CsvTable& table, const Topology& topology);
MetaSchema induce_schema(const CsvTable& table, const Topology& topology,
                         const ColumnFeatures& features);

double compute_scs(const MetaSchema& schema, const CsvTable& table);

enum class Perturbation {
  kAX, kBX1, kBX2, kBX3, kAY1, kAY2, kAY3, kAY3d, kAY3e, kAY3f, kBY,
  kC1, kD1, kD2, kD3
};

std::string to_string(Perturbation p);
Perturbation parse_perturbation(const std::string& s);
const std::vector<Perturbation>& all_perturbations();

struct SchemaPerturbation {
  Perturbation condition = Perturbation::kAX;
  // Condition-specific value: new name, description, or column label.
  // Empty selects the documented default for the condition.
  std::string value;
  // Second value for BY (description).
  std::string value2;
  std::uint64_t seed = 42;
};

// `table` is required for AY-3/AY-3f validation; other conditions accept an
// empty header list.
MetaSchema perturb_schema(const MetaSchema& schema,
                          const SchemaPerturbation& perturbation,
                          const std::vector<std::string>& table_header);

enum class HostDialect { kLightRag, kGraphRag };

std::string to_string(HostDialect d);
HostDialect parse_dialect(const std::string& s);

struct DialectTokens {
  std::string tuple_delimiter;
  std::string record_delimiter;
  std::string completion_delimiter;
};
DialectTokens dialect_tokens(HostDialect d);

// Host default prompt without any schema (generic entity types).
std::string render_default_prompt(HostDialect dialect);
std::string render_schema_prompt(const MetaSchema& schema, HostDialect dialect);
// Appends the chunk text as the prompt's input section.
std::string render_chunk_prompt(const std::string& prompt,
                                const std::string& chunk_text);

const std::vector<std::string>& default_entity_types();
const std::vector<std::string>& default_extraction_rules();

}  // namespace csvkg
