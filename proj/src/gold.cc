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

#include "csvkg/gold.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "csvkg/error.h"
#include "csvkg/prng.h"
#include "csvkg/text.h"

namespace csvkg {
namespace {

using ojson = nlohmann::ordered_json;

std::size_t ResolveYear(const CsvTable& t, const std::string& year) {
  std::size_t exact = t.column_index(year);
  if (exact != CsvTable::npos) return exact;
  std::size_t found = CsvTable::npos;
  for (std::size_t c = 0; c < t.n_cols(); ++c) {
    if (text::YearLabel(t.header[c]) != year) continue;
    if (found != CsvTable::npos)
      throw InvalidArgument("year " + year + " matches several columns");
    found = c;
  }
  if (found == CsvTable::npos)
    throw InvalidArgument("unknown year column: " + year);
  return found;
}

}  // namespace

bool operator==(const GoldFact& a, const GoldFact& b) {
  return a.dataset_id == b.dataset_id && a.subject == b.subject &&
         a.time == b.time && a.value == b.value && a.row == b.row &&
         a.col == b.col;
}

GoldSet generate_gold(const CsvTable& table, const std::string& subject_col,
                      std::size_t n_entities,
                      const std::vector<std::string>& years,
                      std::uint64_t seed, const std::string& dataset_id) {
  const std::size_t sc = table.column_index(subject_col);
  if (sc == CsvTable::npos)
    throw InvalidArgument("unknown subject column: " + subject_col);
  if (years.empty()) throw InvalidArgument("at least one year is required");
  std::vector<std::size_t> year_cols;
  for (const auto& y : years) year_cols.push_back(ResolveYear(table, y));

  std::vector<std::size_t> candidates;
  std::set<std::string> seen;
  std::size_t missing = 0;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    std::string subject(text::Trim(table.rows[r][sc]));
    if (subject.empty()) continue;
    std::size_t empty = std::count_if(
        year_cols.begin(), year_cols.end(),
        [&](std::size_t c) { return text::Trim(table.rows[r][c]).empty(); });
    missing += empty;
    if (empty > 0 || seen.count(subject)) continue;
    seen.insert(subject);
    candidates.push_back(r);
  }
  if (candidates.size() < n_entities)
    throw InvalidArgument("only " + std::to_string(candidates.size()) +
                          " complete entities available, " +
                          std::to_string(n_entities) + " requested");

  Rng rng(seed);
  for (std::size_t i = 0; i < n_entities; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.Below(candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(n_entities);
  std::sort(candidates.begin(), candidates.end());

  GoldSet g;
  g.sampling = {subject_col, n_entities, years, seed, missing};
  for (std::size_t r : candidates) {
    for (std::size_t k = 0; k < years.size(); ++k) {
      GoldFact f;
      f.dataset_id = dataset_id;
      f.subject = std::string(text::Trim(table.rows[r][sc]));
      f.time = years[k];
      f.value = table.rows[r][year_cols[k]];
      f.row = r;
      f.col = year_cols[k];
      g.facts.push_back(std::move(f));
    }
  }
  return g;
}

std::vector<std::string> gold_subjects(const GoldSet& gold) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& f : gold.facts)
    if (seen.insert(f.subject).second) out.push_back(f.subject);
  return out;
}

RoundingConvention parse_rounding(const std::string& s) {
  if (s == "none") return RoundingConvention::kNone;
  if (s == "floor2") return RoundingConvention::kFloor2;
  throw InvalidArgument("unknown rounding convention: " + s);
}

DisplayValue round_value_for_display(const std::string& value,
                                     RoundingConvention convention) {
  if (convention == RoundingConvention::kNone) return {value, ""};
  auto v = text::ParseNumber(value);
  if (!v) return {value, "non-numeric value passed through: " + value};
  std::string s(text::Trim(value));
  if (s.find_first_of("eE") == std::string::npos) {
    std::size_t dot = s.find('.');
    if (dot != std::string::npos && s.size() > dot + 3) s.resize(dot + 3);
    return {s, ""};
  }
  return {text::FormatNumber(std::trunc(*v * 100.0) / 100.0), ""};
}

std::string gold_to_jsonl(const GoldSet& gold) {
  std::string out;
  for (const auto& f : gold.facts) {
    ojson o;
    o["dataset_id"] = f.dataset_id;
    o["subject"] = f.subject;
    o["time"] = f.time;
    o["value"] = f.value;
    o["row"] = f.row;
    o["col"] = f.col;
    out += o.dump() + "\n";
  }
  return out;
}

GoldSet gold_from_jsonl(const std::string& input) {
  GoldSet g;
  std::istringstream in(input);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::Trim(line).empty()) continue;
    ojson o = ojson::parse(line, nullptr, false);
    auto str = [&](const char* k) {
      if (!o.contains(k) || !o[k].is_string())
        throw ParseError(std::string("gold record missing string field ") + k,
                         lineno);
      return o[k].get<std::string>();
    };
    auto idx = [&](const char* k) -> std::size_t {
      if (!o.contains(k)) return 0;
      if (!o[k].is_number_unsigned())
        throw ParseError(std::string("gold field ") + k +
                             " must be a non-negative integer",
                         lineno);
      return o[k].get<std::size_t>();
    };
    if (o.is_discarded() || !o.is_object())
      throw ParseError("malformed gold record", lineno);
    GoldFact f;
    f.dataset_id = o.contains("dataset_id") ? str("dataset_id") : "";
    f.subject = str("subject");
    f.time = str("time");
    f.value = str("value");
    f.row = idx("row");
    f.col = idx("col");
    g.facts.push_back(std::move(f));
  }
  return g;
}

void write_gold(const GoldSet& gold, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << gold_to_jsonl(gold);
  if (!out) throw IoError("write failure on " + path);
}

GoldSet read_gold(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return gold_from_jsonl(ss.str());
}

}  // namespace csvkg
