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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csvkg/graph.h"
#include "csvkg/schema.h"
#include "csvkg/serialization.h"

namespace csvkg {

enum class SurrogateMode { kFaithful, kProliferate, kRefuse, kRelationDrop };
enum class AnchorMatch { kExactToken, kNone };

std::string to_string(SurrogateMode m);
SurrogateMode parse_surrogate_mode(const std::string& s);
std::string to_string(AnchorMatch m);
AnchorMatch parse_anchor_match(const std::string& s);

struct SurrogateConfig {
  SurrogateMode mode = SurrogateMode::kFaithful;
  AnchorMatch anchor_match = AnchorMatch::kExactToken;
  std::size_t jobs = 1;
};

struct ExtractionJob {
  ChunkSet chunks;
  std::string prompt;
  HostDialect dialect = HostDialect::kLightRag;
  // One of the four factorial conditions or a named probe condition.
  std::string condition_label = "full";
};

struct ExtractionEvent {
  std::string chunk_id;
  // "refusal", "no_anchor", "malformed", "proliferation"
  std::string kind;
  std::string detail;
};

struct ExtractionResult {
  KnowledgeGraph graph;
  std::vector<ExtractionEvent> events;
  std::size_t refusals = 0;
  std::size_t malformed = 0;
  std::size_t anchored_rows = 0;
};

// One labelled cell as seen inside a chunk.
struct ChunkField {
  std::string label;  // empty when the chunk carries no label for the cell
  std::string value;
};

// Splits a chunk into rows of labelled cells according to its format.
// `has_header` applies to naive chunks (true when the chunk starts with the
// CSV header line).
std::vector<std::vector<ChunkField>> chunk_rows(const Chunk& chunk,
                                                Format format, bool prose,
                                                bool has_header);

// Lower-cased token sequence equality ("Country_Code" ~ "Country Code").
bool labels_token_equal(const std::string& a, const std::string& b);

// `schema` null selects the no-schema baseline extractor.
ExtractionResult surrogate_extract(const ExtractionJob& job,
                                   const MetaSchema* schema,
                                   const SurrogateConfig& config = {});

// Writes prompts/<chunk-id>.txt and manifest.json under out_dir.
void export_job(const ExtractionJob& job, const std::string& out_dir);

// Reads <responses_dir>/<chunk-id>.txt for every manifest entry.
ExtractionResult import_responses(const std::string& manifest_path,
                                  const std::string& responses_dir);

// Parses one host response into the graph under construction.
void parse_response(const std::string& chunk_id, const std::string& response,
                    KnowledgeGraph& graph, ExtractionResult& result);

struct PipelineConfig {
  SurrogateConfig surrogate;
  SerializeOptions serialize;
  GuardConfig guard;
  HostDialect dialect = HostDialect::kLightRag;
  bool apply_fallback = true;
  std::string condition_label = "full";
};

struct Provenance {
  std::string condition_label;
  std::string format;
  bool schema_used = false;
  std::string pre_guard;       // proceed | skip_schema
  double edge_node_ratio = 0;  // of the first extraction
  std::string guard_decision;  // proceed | fallback | skip_schema
  bool fallback_applied = false;
  std::size_t n_chunks = 0;
  std::size_t refusals = 0;
  std::size_t malformed = 0;
};

struct PipelineResult {
  KnowledgeGraph graph;
  StructuralMetrics metrics;
  GuardDecision guard_decision = GuardDecision::kProceed;
  Provenance provenance;
  std::vector<ExtractionEvent> events;
};

PipelineResult run_pipeline(const CsvTable& table, const Topology& topology,
                            const MetaSchema* schema,
                            const PipelineConfig& config);

}  // namespace csvkg
