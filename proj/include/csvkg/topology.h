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

#include <optional>
#include <string>
#include <vector>

#include "csvkg/table.h"

namespace csvkg {

enum class TopologyTag { kTypeI, kTypeII, kTypeIII };

std::string to_string(TopologyTag tag);
TopologyTag parse_topology_tag(const std::string& s);

struct ClassifierConfig {
  std::size_t few_time_cols_max = 6;
  std::size_t deep_hierarchy_min = 3;
  std::size_t key_cols_min = 2;
  // Drops both guards (|C_T| bound and the deep-hierarchy disjunction).
  bool legacy = false;
  // Reports whether any key column looks like a row identifier
  // (unique values > 0.5 * n_rows). Never changes the tag.
  bool cardinality_diagnostic = false;
};

void validate(const ClassifierConfig& config);

struct GuardTrace {
  bool key_cols_ok = false;       // |C_key| >= key_cols_min
  bool has_numeric = false;       // n_numeric > 0
  bool few_time_cols = false;     // |C_T| <= few_time_cols_max
  bool deep_hierarchy = false;    // |C_key| >= deep_hierarchy_min
  bool no_time_cols = false;      // |C_T| == 0
  bool transposed = false;
  bool year_in_body = false;
  bool fiscal = false;
  bool legacy = false;
};

struct TopologyOverride {
  TopologyTag original = TopologyTag::kTypeI;
  std::string reason;
  bool no_op = false;
};

struct Topology {
  TopologyTag tag = TopologyTag::kTypeI;
  // "rule1_type3", "rule2_type2" or "default_type1".
  std::string rule_fired;
  GuardTrace guard_trace;
  std::optional<TopologyOverride> override_;
  // Present only when the cardinality diagnostic is enabled: labels of key
  // columns whose cardinality exceeds half the row count.
  std::optional<std::vector<std::string>> identifier_like_keys;
};

Topology classify(const ColumnFeatures& features,
                  const ClassifierConfig& config = {});

// Table-aware variant; identical tag, plus the optional diagnostic.
Topology classify_table(const CsvTable& table, const ColumnFeatures& features,
                        const ClassifierConfig& config = {});

Topology apply_override(const Topology& topology, TopologyTag manual_tag,
                        const std::string& reason);

// Feature vector used by the regression suite when no table is available.
struct FeatureVector {
  std::size_t key_cols = 0;
  std::size_t time_cols = 0;
  std::size_t n_numeric = 0;
  bool fiscal = false;
  bool transposed = false;
  bool year_in_body = false;

  ColumnFeatures to_features() const;
};

struct RegressionCase {
  std::string id;
  std::string description;
  FeatureVector features;
  bool legacy = false;
  TopologyTag expected;
};

// Documented classifications: round 1 (guards on and legacy), round 2,
// boundary cases, and the THE ranking anomaly.
const std::vector<RegressionCase>& regression_cases();

}  // namespace csvkg
