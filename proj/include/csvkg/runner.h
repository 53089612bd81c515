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

#include "csvkg/fidelity.h"
#include "csvkg/host.h"
#include "csvkg/json_io.h"
#include "csvkg/stats.h"

namespace csvkg {

struct GoldGenParams {
  std::size_t n_entities = 25;
  std::vector<std::string> years;
  std::uint64_t seed = 42;
};

struct DatasetManifest {
  std::string dataset_id;
  std::string csv_path;  // resolved against the manifest directory
  std::string subject_col;
  std::optional<std::string> gold_path;
  GoldGenParams gold_gen;
  std::optional<TopologyTag> topology_override;
  std::string override_reason;
  std::vector<Condition> conditions;
  std::uint64_t seed = 42;
  SurrogateMode schema_only_mode = SurrogateMode::kProliferate;
  SurrogateMode full_mode = SurrogateMode::kFaithful;
  ojson raw;  // entry as written, hashed into the config hash
};

struct Manifest {
  std::string path;
  std::vector<DatasetManifest> datasets;
};

struct RunnerOptions {
  std::size_t jobs = 1;
  std::size_t n_boot = 1000;
  std::size_t n_perm = 10000;
  double theta = 0.90;
  std::size_t budget = 600;
  HostDialect dialect = HostDialect::kLightRag;
  bool timestamps = false;
};

struct RunRecord {
  std::string dataset_id;
  Condition condition = Condition::kBaseline;
  FidelityReport fidelity;
  StructuralMetrics metrics;
  GuardDecision guard_decision = GuardDecision::kProceed;
  Provenance provenance;
  std::string config_hash;
  std::string started_at;  // empty unless timestamps are requested
  std::string finished_at;
};

struct DatasetResult {
  std::string dataset_id;
  std::string error;  // empty on success
  std::string topology;
  std::string config_hash;
  std::vector<RunRecord> records;
  std::optional<InteractionResult> interaction;
  std::optional<PermutationResult> permutation;
};

struct FactorialResult {
  std::vector<DatasetResult> datasets;
  std::optional<FisherResult> fisher;
  std::size_t fisher_inputs = 0;
  bool any_error = false;
};

Manifest parse_manifest(const std::string& path);
// `base_dir` resolves relative paths.
Manifest parse_manifest_text(const std::string& text,
                             const std::string& base_dir);

// FNV-1a over the canonical JSON of every output-affecting parameter.
std::string config_hash(const DatasetManifest& dataset,
                        const RunnerOptions& options);

DatasetResult run_dataset(const DatasetManifest& dataset,
                          const RunnerOptions& options);
FactorialResult run_factorial(const Manifest& manifest,
                              const RunnerOptions& options);

ojson to_json(const RunRecord& r);
ojson to_json(const FactorialResult& r);

// Markdown report from the JSON produced by to_json(FactorialResult).
std::string render_report(const ojson& factorial);

}  // namespace csvkg
