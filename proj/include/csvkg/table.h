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
#include <string_view>
#include <vector>

namespace csvkg {

struct CsvOptions {
  char delimiter = ',';
  // "utf-8" or "latin-1". Latin-1 input is converted to UTF-8 on read.
  std::string encoding = "utf-8";
};

// Rectangular table. Row 0 of `rows` is the first data row; the header is
// held separately. Cell text is raw: no numeric coercion, no trimming.
struct CsvTable {
  std::string source_path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return header.size(); }
  const std::string& cell(std::size_t r, std::size_t c) const {
    return rows[r][c];
  }
  // Index of the column whose label equals `label`, or npos.
  std::size_t column_index(std::string_view label) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

bool operator==(const CsvTable& a, const CsvTable& b);

CsvTable parse_csv(const std::string& path, const CsvOptions& options = {});
CsvTable parse_csv_text(std::string_view text, const CsvOptions& options = {},
                        std::string source_path = {});

// RFC 4180 output with LF line endings. Cells are quoted only when they
// contain the delimiter, a quote, CR or LF.
std::string to_csv_text(const CsvTable& table, char delimiter = ',');

struct ColumnFeatures {
  std::vector<std::size_t> time_cols;  // C_T
  std::vector<std::size_t> key_cols;   // C_key, always 0..k-1
  std::size_t n_numeric = 0;
  bool fiscal = false;
  bool transposed = false;
  bool year_in_body = false;
  // Numeric fraction per column over the scanned rows.
  std::vector<double> numeric_fractions;
};

bool operator==(const ColumnFeatures& a, const ColumnFeatures& b);

struct FeatureOptions {
  std::size_t scan_rows = 25;
  std::size_t body_rows = 6;
  double numeric_threshold = 0.6;
  std::size_t transposed_min = 2;
  std::size_t year_in_body_min = 3;
};

ColumnFeatures extract_features(const CsvTable& table,
                                const FeatureOptions& options = {});

double numeric_fraction(const std::vector<std::string>& column);

std::vector<std::string> column_values(const CsvTable& table, std::size_t col,
                                       std::size_t max_rows = CsvTable::npos);

}  // namespace csvkg
