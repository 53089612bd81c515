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
#include <string>
#include <vector>

#include "csvkg/serialization.h"
#include "csvkg/table.h"

namespace csvkg {

struct CdsResult {
  double cds = 0.0;
  double scf = 0.0;               // subject columns / all columns
  double evr = 0.0;               // min(1, mean_entity_len / normalizer)
  double mean_entity_len = 0.0;   // code points, non-empty subject cells
};

// Column Descriptiveness Score from its two components.
CdsResult cds_from_components(double scf, double mean_entity_len,
                              double normalizer = 20.0);

CdsResult compute_cds(const CsvTable& table,
                      const std::vector<std::string>& subject_cols,
                      double normalizer = 20.0);

// Template Token Fraction: a token is a template token when it occurs in at
// least `presence_threshold` of the chunks; each chunk scores the share of
// its token occurrences that are template tokens; chunks without tokens are
// skipped and the scores are averaged.
double compute_ttf(const ChunkSet& chunks, double presence_threshold = 0.8);

}  // namespace csvkg
