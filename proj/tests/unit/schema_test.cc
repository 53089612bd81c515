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

#include <gtest/gtest.h>

#include "csvkg/error.h"
#include "csvkg/json_io.h"
#include "support/fixtures.h"

namespace csvkg {
namespace {

struct Induced {
  CsvTable table;
  MetaSchema schema;
};

Induced Wide() {
  CsvTable t = testing::wide_matrix(20);
  ColumnFeatures f = extract_features(t);
  return {t, induce_schema(t, classify_table(t, f), f)};
}

TEST(Induce, TypeIIWideMatrix) {
  auto [t, s] = Wide();
  ASSERT_EQ(s.entity_types.size(), 4u);
  EXPECT_EQ(s.entity_types[0].type_name, "Country_Name");
  EXPECT_EQ(*s.entity_types[0].column_ref, "Country Name");
  ASSERT_EQ(s.relation_templates.size(), 1u);
  EXPECT_EQ(s.relation_templates[0].name, "has_value_in_year");
  EXPECT_EQ(s.relation_templates[0].time_role.size(), 22u);
  EXPECT_EQ(s.type_validity, TypeValidity::kValid);
  EXPECT_EQ(compute_scs(s, t), 1.0);
}

TEST(Induce, TypeIIIComposite) {
  CsvTable t = parse_csv_text(testing::inpatient_csv(40));
  ColumnFeatures f = extract_features(t);
  MetaSchema s = induce_schema(t, classify_table(t, f), f);
  std::vector<std::string> names;
  for (const auto& e : s.entity_types) names.push_back(e.type_name);
  EXPECT_EQ(names, (std::vector<std::string>{"Disease_Category", "Sex", "Age_Group", "StatValue"}));
  ASSERT_EQ(s.relation_templates.size(), 2u);
  EXPECT_EQ(s.relation_templates[0].name, "has_Discharges");
  EXPECT_EQ(s.relation_templates[1].value_role, "Beds");
  EXPECT_EQ(compute_scs(s, t), 1.0);
}

TEST(Induce, TypeIRaises) {
  CsvTable t = parse_csv_text(testing::type1_csv());
  EXPECT_THROW(induce_schema(t, classify_table(t, extract_features(t))), UnsupportedTopology);
}

TEST(Induce, Deterministic) {
  EXPECT_EQ(Wide().schema, Wide().schema);
}

TEST(Scs, HalfCoverageDegraded) {
  CsvTable t = parse_csv_text("Region,Country,2000,2001\nA,B,1.5,2.5\n");
  MetaSchema s;
  s.entity_types.push_back({"Country", std::string("Country"), "", EntityKind::kSubject, false});
  s.relation_templates.push_back({"r", "Country", {"2000"}, "StatValue"});
  s.type_validity = TypeValidity::kDegraded;
  EXPECT_EQ(compute_scs(s, t), 0.35);
  s.type_validity = TypeValidity::kValid;
  EXPECT_EQ(compute_scs(s, t), 0.5);
}

TEST(Perturb, AxIsIdentity) {
  auto [t, s] = Wide();
  EXPECT_EQ(perturb_schema(s, {Perturbation::kAX}, t.header), s);
}

TEST(Perturb, Ay3dTouchesOnlyColumnRef) {
  auto [t, s] = Wide();
  MetaSchema p = perturb_schema(s, {Perturbation::kAY3d}, t.header);
  EXPECT_FALSE(p.entity_types[0].column_ref);
  MetaSchema restored = p;
  restored.entity_types[0].column_ref = s.entity_types[0].column_ref;
  EXPECT_EQ(restored, s);
  EXPECT_EQ(to_json(restored).dump(), to_json(s).dump());
}

TEST(Perturb, RenameKeepsRelationsInSync) {
  auto [t, s] = Wide();
  MetaSchema p = perturb_schema(s, {Perturbation::kBX1}, t.header);
  EXPECT_EQ(p.entity_types[0].type_name, "Nation_Identifier");
  EXPECT_EQ(p.relation_templates[0].subject_type, "Nation_Identifier");
  EXPECT_EQ(p.entity_types[0].column_ref, s.entity_types[0].column_ref);
}

TEST(Perturb, ColumnRefConditionsValidateLabels) {
  auto [t, s] = Wide();
  MetaSchema a = perturb_schema(s, {Perturbation::kAY3, "Country Code"}, t.header);
  EXPECT_EQ(*a.entity_types[0].column_ref, "Country Code");
  EXPECT_TRUE(a.entity_types[0].mismatched);
  EXPECT_THROW(perturb_schema(s, {Perturbation::kAY3, "Nope"}, t.header), InvalidArgument);
  EXPECT_THROW(perturb_schema(s, {Perturbation::kAY3, "Country Name"}, t.header), InvalidArgument);
  MetaSchema f = perturb_schema(s, {Perturbation::kAY3f}, t.header);
  EXPECT_EQ(*f.entity_types[0].column_ref, "Disease_Category");
  EXPECT_THROW(perturb_schema(s, {Perturbation::kAY3f, "Country Code"}, t.header), InvalidArgument);
  MetaSchema d2 = perturb_schema(s, {Perturbation::kD2}, t.header);
  EXPECT_EQ(*d2.entity_types[0].column_ref, "Cou");
  EXPECT_TRUE(d2.entity_types[0].mismatched);
}

TEST(Perturb, RelationAndOrderConditions) {
  auto [t, s] = Wide();
  MetaSchema c1 = perturb_schema(s, {Perturbation::kC1}, t.header);
  EXPECT_EQ(c1.relation_templates[0].name, "has_value_in_period");
  SchemaPerturbation d1{Perturbation::kD1, "", "", 42};
  MetaSchema a = perturb_schema(s, d1, t.header);
  MetaSchema b = perturb_schema(s, d1, t.header);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.relation_templates[0].time_role, s.relation_templates[0].time_role);
  auto sorted = a.relation_templates[0].time_role;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, s.relation_templates[0].time_role);
  EXPECT_EQ(perturb_schema(s, {Perturbation::kD3}, t.header), s);
}

TEST(Perturb, NamesRoundTrip) {
  for (Perturbation p : all_perturbations()) EXPECT_EQ(parse_perturbation(to_string(p)), p);
  EXPECT_EQ(all_perturbations().size(), 15u);
  EXPECT_THROW(parse_perturbation("ZZ"), InvalidArgument);
}

TEST(Prompt, DialectDelimiters) {
  auto [t, s] = Wide();
  std::string light = render_schema_prompt(s, HostDialect::kLightRag);
  std::string graph = render_schema_prompt(s, HostDialect::kGraphRag);
  EXPECT_NE(light.find("<|#|>"), std::string::npos);
  EXPECT_EQ(graph.find("<|#|>"), std::string::npos);
  EXPECT_NE(graph.find("<|>"), std::string::npos);
  EXPECT_NE(light.find("Country_Name"), std::string::npos);
  EXPECT_NE(light.find("Country Name"), std::string::npos);
  std::string def = render_default_prompt(HostDialect::kLightRag);
  for (const auto& e : default_entity_types()) EXPECT_NE(def.find(e), std::string::npos);
  std::string chunk = render_chunk_prompt(def, "Row text");
  EXPECT_NE(chunk.find("Row text"), std::string::npos);
}

TEST(SchemaJson, RoundTrip) {
  auto [t, s] = Wide();
  MetaSchema p = perturb_schema(s, {Perturbation::kAY3d}, t.header);
  EXPECT_EQ(schema_from_json(to_json(p)), p);
  EXPECT_EQ(schema_from_json(to_json(s)), s);
  EXPECT_THROW(schema_from_json(ojson::parse("{\"x\":1}")), ParseError);
}

}  // namespace
}  // namespace csvkg
