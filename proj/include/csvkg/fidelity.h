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

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "csvkg/gold.h"
#include "csvkg/graph.h"

namespace csvkg {

struct MatchOptions {
  double rel_tol = 1e-9;
  // Also accept the gold value truncated to two decimals.
  bool accept_floor2 = false;
  std::size_t hops = 2;
};

enum class ErrorClass {
  kNone,
  kEntityMissing,
  kEntityIsolated,
  kValueMissing,
  kYearMissing,
  kValueWrongBinding
};

std::string to_string(ErrorClass e);
const std::vector<ErrorClass>& error_classes();  // excludes kNone

struct FactOutcome {
  GoldFact fact;
  bool covered = false;
  std::vector<std::string> anchor_nodes;
  ErrorClass error_class = ErrorClass::kNone;
};

struct EntityCoverage {
  double ec = 0.0;
  std::vector<std::string> subjects;
  std::vector<bool> hits;
};

struct ValueFirstResult {
  double fc = 0.0;
  std::vector<bool> covered;
  std::vector<std::size_t> rescued;  // fact indices
  std::vector<std::size_t> lost;
};

struct TripleScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t n_gold = 0;
  std::size_t n_system = 0;
  std::size_t n_matched = 0;
};

struct FidelityReport {
  std::size_t n_facts = 0;
  double ec = 0.0;
  double fc = 0.0;
  double fc_value_first = 0.0;
  double triple_precision = 0.0;
  double triple_recall = 0.0;
  double triple_f1 = 0.0;
  std::vector<FactOutcome> outcomes;
  std::map<std::string, std::size_t> taxonomy_counts;
  std::size_t value_first_rescued = 0;
  std::size_t value_first_lost = 0;
  EntityCoverage entity_coverage;
};

// Evidence units: one per node (name + description) and one per edge
// (description + keywords + endpoint names).
struct EvidenceIndex {
  explicit EvidenceIndex(const KnowledgeGraph& graph);
  const KnowledgeGraph& graph;
  std::vector<std::string> node_text;
  std::vector<std::string> edge_text;
  std::vector<std::string> lower_names;
};

// Bidirectional case-insensitive substring match; empty names never match.
bool names_match(const std::string& subject, const std::string& node_name);

std::vector<std::size_t> find_anchors(const EvidenceIndex& index,
                                      const std::string& subject);

// Node indices within `hops` undirected hops of any source, BFS order.
std::vector<std::size_t> bfs_ball(const KnowledgeGraph& graph,
                                  const std::vector<std::size_t>& sources,
                                  std::size_t hops);

bool value_matches(const std::string& text, const std::string& gold_value,
                   const MatchOptions& options);
bool time_matches(const std::string& text, const std::string& gold_time);

EntityCoverage entity_coverage(const KnowledgeGraph& graph,
                               const GoldSet& gold);

// EC, FC and taxonomy (fc_value_first / triple fields left at zero).
FidelityReport fact_coverage(const KnowledgeGraph& graph, const GoldSet& gold,
                             const MatchOptions& options = {});

ValueFirstResult value_first_fc(const KnowledgeGraph& graph,
                                const GoldSet& gold,
                                const MatchOptions& options = {});

struct YearValue {
  std::string year;
  double value = 0.0;
  std::size_t position = 0;
};

// "<year> [:|=|in] <number>" pairs. Separator-less pairs whose value is
// itself a year token are skipped.
std::vector<YearValue> extract_year_values(const std::string& text);

using Triple = std::tuple<std::string, std::string, std::string>;

std::set<Triple> gold_triples(const GoldSet& gold);
std::set<Triple> system_triples(const KnowledgeGraph& graph,
                                const std::vector<std::string>& subjects);
TripleScores triple_prf(const std::set<Triple>& gold,
                        const std::set<Triple>& system);
TripleScores canonical_triple_f1(const KnowledgeGraph& graph,
                                 const GoldSet& gold);

// Everything above in one report.
FidelityReport evaluate(const KnowledgeGraph& graph, const GoldSet& gold,
                        const MatchOptions& options = {});

}  // namespace csvkg
