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

#include "csvkg/topology.h"

#include <set>

#include "csvkg/error.h"
#include "csvkg/text.h"

namespace csvkg {

std::string to_string(TopologyTag tag) {
  switch (tag) {
    case TopologyTag::kTypeI:
      return "TypeI";
    case TopologyTag::kTypeII:
      return "TypeII";
    case TopologyTag::kTypeIII:
      return "TypeIII";
  }
  return "TypeI";
}

TopologyTag parse_topology_tag(const std::string& s) {
  std::string t = text::ToLower(s);
  if (t == "typei" || t == "type-i" || t == "i") return TopologyTag::kTypeI;
  if (t == "typeii" || t == "type-ii" || t == "ii") return TopologyTag::kTypeII;
  if (t == "typeiii" || t == "type-iii" || t == "iii")
    return TopologyTag::kTypeIII;
  throw InvalidArgument("unknown topology tag: " + s);
}

void validate(const ClassifierConfig& config) {
  if (config.few_time_cols_max < 1 || config.deep_hierarchy_min < 1 ||
      config.key_cols_min < 1)
    throw InvalidArgument("classifier thresholds must be >= 1");
}

Topology classify(const ColumnFeatures& f, const ClassifierConfig& config) {
  validate(config);
  const std::size_t n_key = f.key_cols.size();
  const std::size_t n_time = f.time_cols.size();

  GuardTrace g;
  g.key_cols_ok = n_key >= config.key_cols_min;
  g.has_numeric = f.n_numeric > 0;
  g.few_time_cols = n_time <= config.few_time_cols_max;
  g.deep_hierarchy = n_key >= config.deep_hierarchy_min;
  g.no_time_cols = n_time == 0;
  g.transposed = f.transposed;
  g.year_in_body = f.year_in_body;
  g.fiscal = f.fiscal;
  g.legacy = config.legacy;

  bool guards = config.legacy ||
                (g.few_time_cols && (g.deep_hierarchy || g.no_time_cols));
  bool rule1 = g.key_cols_ok && g.has_numeric && guards && !g.transposed &&
               !g.year_in_body && !g.fiscal;

  Topology t;
  t.guard_trace = g;
  if (rule1) {
    t.tag = TopologyTag::kTypeIII;
    t.rule_fired = "rule1_type3";
  } else if (n_time > 0 || g.transposed || g.year_in_body) {
    t.tag = TopologyTag::kTypeII;
    t.rule_fired = "rule2_type2";
  } else {
    t.tag = TopologyTag::kTypeI;
    t.rule_fired = "default_type1";
  }
  return t;
}

Topology classify_table(const CsvTable& table, const ColumnFeatures& features,
                        const ClassifierConfig& config) {
  Topology t = classify(features, config);
  if (config.cardinality_diagnostic) {
    std::vector<std::string> flagged;
    for (std::size_t c : features.key_cols) {
      std::set<std::string> unique;
      for (const auto& row : table.rows)
        unique.insert(std::string(text::Trim(row[c])));
      if (static_cast<double>(unique.size()) > 0.5 * table.n_rows())
        flagged.push_back(table.header[c]);
    }
    t.identifier_like_keys = std::move(flagged);
  }
  return t;
}

Topology apply_override(const Topology& topology, TopologyTag manual_tag,
                        const std::string& reason) {
  if (text::Trim(reason).empty())
    throw InvalidArgument("override reason must be non-empty");
  Topology out = topology;
  TopologyOverride ov;
  ov.original =
      topology.override_ ? topology.override_->original : topology.tag;
  ov.reason = reason;
  ov.no_op = manual_tag == topology.tag;
  out.tag = manual_tag;
  out.override_ = ov;
  return out;
}

ColumnFeatures FeatureVector::to_features() const {
  ColumnFeatures f;
  for (std::size_t i = 0; i < key_cols; ++i) f.key_cols.push_back(i);
  for (std::size_t i = 0; i < time_cols; ++i)
    f.time_cols.push_back(key_cols + i);
  f.n_numeric = n_numeric;
  f.fiscal = fiscal;
  f.transposed = transposed;
  f.year_in_body = year_in_body;
  return f;
}

const std::vector<RegressionCase>& regression_cases() {
  using T = TopologyTag;
  static const std::vector<RegressionCase> cases = {
      // Round 1: OECD and HK Population.
      {"r1-1", "OECD GDP, 25 countries x 14 years", {1, 14, 14}, false,
       T::kTypeII},
      {"r1-2", "OECD Hospital Beds, 25 countries x 9 years", {1, 9, 9}, false,
       T::kTypeII},
      {"r1-3", "OECD Germany Discharge, 2 text columns x 9 years", {2, 9, 9},
       false, T::kTypeII},
      {"r1-4", "OECD Discharges, 3 text columns x 9 years", {3, 9, 9}, false,
       T::kTypeII},
      {"r1-5", "HK Population Trends, year x ratio", {0, 0, 2, false, true},
       false, T::kTypeII},
      {"r1-6", "HK Gender/Age Population, multi-level header", {3, 0, 4},
       false, T::kTypeIII},
      // Round 1 pre-guard behaviour on the two OECD discharge files.
      {"r1-3-legacy", "OECD Germany Discharge without guards", {2, 9, 9}, true,
       T::kTypeIII},
      {"r1-4-legacy", "OECD Discharges without guards", {3, 9, 9}, true,
       T::kTypeIII},
      // Round 2: 10 Type-II and 4 Type-III files across 8 domains.
      {"r2-01", "World Bank economics, 4 metadata columns x 64 years",
       {4, 64, 64}, false, T::kTypeII},
      {"r2-02", "World Bank labor, 4 metadata columns x 64 years", {4, 64, 64},
       false, T::kTypeII},
      {"r2-03", "World Bank education, 4 metadata columns x 64 years",
       {4, 64, 60}, false, T::kTypeII},
      {"r2-04", "World Bank environment, 4 metadata columns x 64 years",
       {4, 64, 58}, false, T::kTypeII},
      {"r2-05", "Eurostat agriculture, unit/geo x 20 years", {2, 20, 20},
       false, T::kTypeII},
      {"r2-06", "Eurostat crime, 3 text columns x 12 years", {3, 12, 12}, false,
       T::kTypeII},
      {"r2-07", "US Census population, state x 10 years", {1, 10, 10}, false,
       T::kTypeII},
      {"r2-08", "Eurostat labor, fiscal-year headers", {1, 5, 5, true}, false,
       T::kTypeII},
      {"r2-09", "US Census public health, 2 text columns x 3 years", {2, 3, 3},
       false, T::kTypeII},
      {"r2-10", "Population long table, years in body", {2, 0, 2, false, false,
                                                         true},
       false, T::kTypeII},
      {"r2-11", "Eurostat education hierarchy, 3 levels", {3, 0, 3}, false,
       T::kTypeIII},
      {"r2-12", "US Census crime, state/offense/category", {3, 0, 2}, false,
       T::kTypeIII},
      {"r2-13", "Agriculture hierarchy, 4 levels x 2 years", {4, 2, 2}, false,
       T::kTypeIII},
      {"r2-14", "Environment hierarchy, 3 levels x 4 years", {3, 4, 4}, false,
       T::kTypeIII},
      // Boundary cases in the |C_T| overlap region.
      {"h-budget", "Annual Budget, no key columns, 4 years", {0, 4, 4}, false,
       T::kTypeII},
      {"h-health", "Health Statistics, years in body", {1, 0, 3, false, false,
                                                        true},
       false, T::kTypeII},
      {"h-food", "Food Safety, 3 key columns", {3, 0, 2}, false, T::kTypeIII},
      // THE ranking as recorded: World Rank read as text, years unrecognised.
      {"the", "THE University Ranking (documented Type-III output)", {2, 0, 3},
       false, T::kTypeIII},
  };
  return cases;
}

}  // namespace csvkg
