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
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "csvkg/table.h"
#include "csvkg/topology.h"

namespace csvkg {

enum class Format { kSge, kMarkdown, kJsonRecords, kRowLocal, kNaive };

std::string to_string(Format f);
Format parse_format(const std::string& s);
bool is_row_preserving(Format f);

struct Chunk {
  std::string id;
  std::string text;
  // Half-open range of data-row indices whose content appears in the chunk.
  std::pair<std::size_t, std::size_t> row_span{0, 0};
};

struct ChunkSet {
  Format format = Format::kSge;
  bool prose = false;
  std::vector<Chunk> chunks;
  std::size_t chunk_token_budget = 600;
};

struct SerializeOptions {
  Format format = Format::kSge;
  std::size_t budget = 600;
  bool one_row_per_chunk = false;
  // sge sub-style "{stem}_year{Y}={value} {unit}" for time columns.
  bool prose = false;
  std::string prose_stem = "value";
  std::string prose_unit;
  // Joins sge rows with a space instead of a newline inside a chunk.
  bool drop_row_delimiters = false;
};

ChunkSet serialize(const CsvTable& table, const Topology& topology,
                   const SerializeOptions& options);

// Single sge line for one data row.
std::string sge_row(const CsvTable& table, std::size_t row,
                    const SerializeOptions& options = {});

enum class Ablation { kM0, kM1, kM2, kM3, kM4, kM5, kM6 };

std::string to_string(Ablation a);
Ablation parse_ablation(const std::string& s);

struct AblationCondition {
  Ablation tag = Ablation::kM0;
  std::uint64_t seed = 42;
};

ChunkSet ablate(const ChunkSet& chunks, const AblationCondition& condition,
                const std::vector<std::string>& column_labels,
                const std::vector<std::string>& entity_names);

std::string chunks_to_jsonl(const ChunkSet& chunks);
ChunkSet chunks_from_jsonl(const std::string& text);

}  // namespace csvkg
