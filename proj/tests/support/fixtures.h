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
#include <string>
#include <vector>

#include "csvkg/table.h"

namespace csvkg::testing {

// Pairwise non-substring, capitalized names.
std::vector<std::string> distinct_names(std::size_t n, std::uint64_t seed);

// Wide Type-II matrix: Country Name, Country Code, Indicator Name,
// Indicator Code, then one column per year in [first_year, last_year].
// Values are two-decimal numbers whose integer part is never a year.
std::string wide_matrix_csv(std::size_t n_entities = 60, std::uint64_t seed = 7,
                            int first_year = 2000, int last_year = 2021);
CsvTable wide_matrix(std::size_t n_entities = 60, std::uint64_t seed = 7,
                     int first_year = 2000, int last_year = 2021);

// Composite-key Type-III table: Disease Category, Sex, Age Group,
// Discharges, Beds.
std::string inpatient_csv(std::size_t n_rows);

// Key/value table with no year columns and few numeric columns (Type-I).
std::string type1_csv();

const std::vector<std::string>& standard_gold_years();

// Fresh directory under the system temp directory.
std::string temp_dir(const std::string& name);
std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& content);

// Runs a shell command; returns exit status and captures stdout.
int run_command(const std::string& command, std::string* stdout_text);

}  // namespace csvkg::testing
