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

#include "csvkg/table.h"

#include <fstream>
#include <sstream>

#include "csvkg/error.h"
#include "csvkg/text.h"

namespace csvkg {
namespace {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;
  bool any_quoted = false;
};

std::vector<Record> Tokenize(std::string_view s, char delim) {
  std::vector<Record> records;
  Record rec;
  std::string field;
  std::size_t line = 1;
  std::size_t i = 0, n = s.size();
  bool at_field_start = true;
  rec.line = line;

  auto end_field = [&] {
    rec.fields.push_back(std::move(field));
    field.clear();
    at_field_start = true;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(rec));
    rec = Record{};
    rec.line = line;
  };

  while (i < n) {
    char c = s[i];
    if (at_field_start && c == '"') {
      rec.any_quoted = true;
      std::size_t open_line = line;
      ++i;
      bool closed = false;
      while (i < n) {
        char q = s[i];
        if (q == '"') {
          if (i + 1 < n && s[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        if (q == '\r') {
          field.push_back('\n');
          ++line;
          i += (i + 1 < n && s[i + 1] == '\n') ? 2 : 1;
          continue;
        }
        if (q == '\n') ++line;
        field.push_back(q);
        ++i;
      }
      if (!closed) throw ParseError("unterminated quoted field", open_line);
      at_field_start = false;
      if (i < n && s[i] != delim && s[i] != '\n' && s[i] != '\r')
        throw ParseError("unexpected character after closing quote", line);
      continue;
    }
    if (c == delim) {
      end_field();
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      i += (c == '\r' && i + 1 < n && s[i + 1] == '\n') ? 2 : 1;
      end_record();
      ++line;
      rec.line = line;
      continue;
    }
    if (c == '"') throw ParseError("quote inside unquoted field", line);
    field.push_back(c);
    at_field_start = false;
    ++i;
  }
  if (!field.empty() || !rec.fields.empty() || rec.any_quoted) end_record();
  return records;
}

bool IsBlank(const Record& r) {
  return !r.any_quoted && r.fields.size() == 1 && r.fields[0].empty();
}

std::string QuoteCell(const std::string& cell, char delim) {
  bool needs = cell.find_first_of(std::string{delim, '"', '\r', '\n'}) !=
               std::string::npos;
  if (!needs) return cell;
  return "\"" + text::ReplaceAll(cell, "\"", "\"\"") + "\"";
}

}  // namespace

std::size_t CsvTable::column_index(std::string_view label) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == label) return i;
  return npos;
}

bool operator==(const CsvTable& a, const CsvTable& b) {
  return a.header == b.header && a.rows == b.rows;
}

CsvTable parse_csv_text(std::string_view input, const CsvOptions& options,
                        std::string source_path) {
  std::string converted;
  if (options.encoding == "latin-1" || options.encoding == "latin1" ||
      options.encoding == "iso-8859-1") {
    converted = text::Latin1ToUtf8(input);
    input = converted;
  } else if (options.encoding != "utf-8" && options.encoding != "utf8") {
    throw InvalidArgument("unsupported encoding: " + options.encoding);
  }
  if (input.size() >= 3 && input.substr(0, 3) == "\xEF\xBB\xBF")
    input.remove_prefix(3);
  if (options.delimiter == '"' || options.delimiter == '\n' ||
      options.delimiter == '\r')
    throw InvalidArgument("invalid delimiter");

  std::vector<Record> records = Tokenize(input, options.delimiter);
  CsvTable table;
  table.source_path = std::move(source_path);
  bool have_header = false;
  for (auto& rec : records) {
    if (IsBlank(rec)) continue;
    if (!have_header) {
      table.header = std::move(rec.fields);
      have_header = true;
      continue;
    }
    if (rec.fields.size() > table.header.size()) {
      throw ParseError("row " + std::to_string(table.rows.size()) + " has " +
                           std::to_string(rec.fields.size()) +
                           " fields, header has " +
                           std::to_string(table.header.size()),
                       rec.line);
    }
    rec.fields.resize(table.header.size());
    table.rows.push_back(std::move(rec.fields));
  }
  if (!have_header) throw ParseError("empty CSV input", 1);
  return table;
}

CsvTable parse_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  std::string data = ss.str();
  if (data.empty()) throw ParseError("empty CSV file " + path, 1);
  return parse_csv_text(data, options, path);
}

std::string to_csv_text(const CsvTable& table, char delimiter) {
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(delimiter);
      out += QuoteCell(row[i], delimiter);
    }
    out.push_back('\n');
  };
  emit(table.header);
  for (const auto& row : table.rows) emit(row);
  return out;
}

double numeric_fraction(const std::vector<std::string>& column) {
  std::size_t non_empty = 0, numeric = 0;
  for (const auto& cell : column) {
    if (text::Trim(cell).empty()) continue;
    ++non_empty;
    if (text::IsNumber(cell)) ++numeric;
  }
  return non_empty ? static_cast<double>(numeric) / non_empty : 0.0;
}

std::vector<std::string> column_values(const CsvTable& table, std::size_t col,
                                       std::size_t max_rows) {
  std::size_t n = std::min(max_rows, table.n_rows());
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) out.push_back(table.rows[r][col]);
  return out;
}

bool operator==(const ColumnFeatures& a, const ColumnFeatures& b) {
  return a.time_cols == b.time_cols && a.key_cols == b.key_cols &&
         a.n_numeric == b.n_numeric && a.fiscal == b.fiscal &&
         a.transposed == b.transposed && a.year_in_body == b.year_in_body &&
         a.numeric_fractions == b.numeric_fractions;
}

ColumnFeatures extract_features(const CsvTable& table,
                                const FeatureOptions& options) {
  ColumnFeatures f;
  const std::size_t m = table.n_cols();
  const std::size_t k = std::min(options.scan_rows, table.n_rows());

  std::vector<bool> is_time(m, false);
  for (std::size_t c = 0; c < m; ++c) {
    const std::string& h = table.header[c];
    bool fiscal = text::ContainsFiscalYear(h);
    if (fiscal || text::ContainsYear(h)) {
      is_time[c] = true;
      f.time_cols.push_back(c);
      if (fiscal) f.fiscal = true;
    }
  }

  f.numeric_fractions.resize(m);
  for (std::size_t c = 0; c < m; ++c) {
    f.numeric_fractions[c] = numeric_fraction(column_values(table, c, k));
    if (f.numeric_fractions[c] >= options.numeric_threshold) ++f.n_numeric;
  }

  for (std::size_t c = 0; c < m; ++c) {
    if (is_time[c] || f.numeric_fractions[c] >= options.numeric_threshold)
      break;
    f.key_cols.push_back(c);
  }

  if (m > 0) {
    std::size_t years = 0;
    for (std::size_t r = 0; r < k; ++r)
      if (text::IsYearToken(table.rows[r][0])) ++years;
    f.transposed = years >= options.transposed_min;
  }

  std::size_t body_years = 0;
  const std::size_t body = std::min(options.body_rows, k);
  for (std::size_t r = 0; r < body; ++r)
    for (std::size_t c = 0; c < m; ++c)
      if (text::IsYearToken(table.rows[r][c])) ++body_years;
  f.year_in_body = body_years >= options.year_in_body_min;
  return f;
}

}  // namespace csvkg
