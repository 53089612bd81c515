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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace csvkg {
namespace text {

std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);

// ASCII case-insensitive substring test. An empty needle never matches.
bool IContains(std::string_view haystack, std::string_view needle);

// Case-fold, trim and collapse internal whitespace runs to one space.
std::string Normalize(std::string_view s);

std::string ReplaceAll(std::string s, std::string_view from,
                       std::string_view to);
std::vector<std::string> Split(std::string_view s, std::string_view sep);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);
// Join/Split with CSV-style double quoting of parts that contain `sep` or '"'.
std::string JoinQuoted(const std::vector<std::string>& parts, std::string_view sep);
std::vector<std::string> SplitQuoted(std::string_view s, std::string_view sep);

// Number of UTF-8 code points (continuation bytes are not counted).
std::size_t Utf8Length(std::string_view s);
std::string Latin1ToUtf8(std::string_view s);

// Strict numeric parse of a whole (trimmed) cell: optional sign, digits with
// optional comma thousands groups, optional fraction, optional exponent.
// Any other leading symbol ("=1", "$5") makes the cell text.
std::optional<double> ParseNumber(std::string_view s);
inline bool IsNumber(std::string_view s) { return ParseNumber(s).has_value(); }

// True when the trimmed cell is exactly a year 1900-2099.
bool IsYearToken(std::string_view s);
// Header contains a year 1900-2099 that is not part of a longer digit run.
bool ContainsYear(std::string_view header);
// Header contains a fiscal-year form: YYYY-YY, YYYY/YY, YYYY-YYYY, YYYY/YYYY.
bool ContainsFiscalYear(std::string_view header);
// First standalone year (or fiscal form) in a header, empty if none.
std::string YearLabel(std::string_view header);

// Finds `token` in `text` where the match is not flanked by digits.
bool ContainsDigitBounded(std::string_view text, std::string_view token);

struct NumberToken {
  std::size_t begin = 0;
  std::size_t end = 0;
  double value = 0.0;
};

// Numeric tokens embedded in free text. A token is
// [-]digits([.,]digits)*([eE][+-]?digits)?; comma groups of three are read as
// thousands separators, otherwise commas split the token.
std::vector<NumberToken> NumberTokens(std::string_view text);

// Shortest round-trip decimal rendering of a double ("77.4", "1e+21").
std::string FormatNumber(double v);

bool NumbersEqual(double a, double b, double rel_tol = 1e-9);

}  // namespace text
}  // namespace csvkg
