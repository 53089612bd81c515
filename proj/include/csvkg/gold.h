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
#include <vector>

#include "csvkg/table.h"

namespace csvkg {

// Gold facts are sampled with the xoshiro256ss-v1 generator (see prng.h):
// candidates are shuffled with a partial Fisher-Yates draw from Rng(seed),
// the first n are kept and then re-sorted by source row.
struct GoldFact {
  std::string dataset_id;
  std::string subject;
  std::string time;
  std::string value;
  std::size_t row = 0;  // data-row index (header excluded)
  std::size_t col = 0;
};

bool operator==(const GoldFact& a, const GoldFact& b);

struct GoldSampling {
  std::string subject_col;
  std::size_t n_entities = 0;
  std::vector<std::string> years;
  std::uint64_t seed = 42;
  std::size_t missing_cells = 0;
};

struct GoldSet {
  std::vector<GoldFact> facts;
  GoldSampling sampling;
};

GoldSet generate_gold(const CsvTable& table, const std::string& subject_col,
                      std::size_t n_entities,
                      const std::vector<std::string>& years,
                      std::uint64_t seed, const std::string& dataset_id = "");

// Distinct subjects in first-appearance order.
std::vector<std::string> gold_subjects(const GoldSet& gold);

enum class RoundingConvention { kNone, kFloor2 };
RoundingConvention parse_rounding(const std::string& s);

struct DisplayValue {
  std::string text;
  std::string warning;  // empty unless the value could not be converted
};

DisplayValue round_value_for_display(const std::string& value,
                                     RoundingConvention convention);

std::string gold_to_jsonl(const GoldSet& gold);
GoldSet gold_from_jsonl(const std::string& text);
void write_gold(const GoldSet& gold, const std::string& path);
GoldSet read_gold(const std::string& path);

}  // namespace csvkg
