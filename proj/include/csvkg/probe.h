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

#include "csvkg/graph.h"

namespace csvkg {

enum class ProbeKind { kRanking, kFiltering, kTrend, kAggregation };

std::string to_string(ProbeKind k);
ProbeKind parse_probe_kind(const std::string& s);

// Query over a candidate entity set. Field use by kind:
//   ranking:     year, k, order ("desc"|"asc"); expected_set
//   filtering:   year, op (">", ">=", "<", "<=", "=="), threshold; expected_set
//   aggregation: year, function (mean|sum|min|max|range); expected_number
//   trend:       entities[0], year, year_to; expected_direction, expected_number
//                (delta = value(year_to) - value(year))
struct ProbeQuery {
  std::string id;
  ProbeKind kind = ProbeKind::kRanking;
  std::vector<std::string> entities;
  std::string year;
  std::string year_to;
  std::size_t k = 1;
  std::string order = "desc";
  std::string op = ">";
  double threshold = 0.0;
  std::string function = "mean";
  std::vector<std::string> expected_set;
  std::optional<double> expected_number;
  std::string expected_direction;
  double tolerance = 0.02;
};

struct ProbeResult {
  std::string id;
  // Entity names, a rendered number, "<direction> <delta>", or "unreachable".
  std::string answer;
  bool correct = false;
  bool unreachable = false;
  std::vector<std::string> unreachable_entities;
};

// Value of `entity` at `year` read from year=value pairs within the
// entity's 2-hop neighbourhood; nullopt if the entity has no anchor or no
// pair for that year. `found` reports whether any anchor exists.
std::optional<double> probe_lookup(const KnowledgeGraph& graph,
                                   const std::string& entity,
                                   const std::string& year, bool* found);

ProbeResult run_probe(const KnowledgeGraph& graph, const ProbeQuery& query);

std::vector<ProbeQuery> probe_queries_from_jsonl(const std::string& text);

}  // namespace csvkg
