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

#include <gtest/gtest.h>

#include "csvkg/error.h"
#include "csvkg/prng.h"
#include "support/fixtures.h"

namespace csvkg {
namespace {

TEST(CsvParse, QuotedFieldsAndLineEndings) {
  CsvTable t = parse_csv_text("\xEF\xBB\xBFName,Note\r\n\"A, Inc\",\"say \"\"hi\"\"\"\r\nB,\"two\r\nlines\"\n");
  ASSERT_EQ(t.header, (std::vector<std::string>{"Name", "Note"}));
  ASSERT_EQ(t.n_rows(), 2u);
  EXPECT_EQ(t.cell(0, 0), "A, Inc");
  EXPECT_EQ(t.cell(0, 1), "say \"hi\"");
  EXPECT_EQ(t.cell(1, 1), "two\nlines");
}

TEST(CsvParse, ShortRowsPadAndBlankLinesSkip) {
  CsvTable t = parse_csv_text("a,b,c\n1\n\n2,3,4\n");
  ASSERT_EQ(t.n_rows(), 2u);
  EXPECT_EQ(t.rows[0], (std::vector<std::string>{"1", "", ""}));
}

TEST(CsvParse, ErrorsCarryLineNumbers) {
  try {
    parse_csv_text("a,b\n1,2\n3,4,5\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_csv_text("a,b\n\"open,2\n"), ParseError);
  EXPECT_THROW(parse_csv_text("a,b\n\"x\"y,2\n"), ParseError);
  EXPECT_THROW(parse_csv_text("a,b\nx\"y,2\n"), ParseError);
  EXPECT_THROW(parse_csv_text(""), ParseError);
  EXPECT_THROW(parse_csv("/nonexistent/file.csv"), IoError);
}

TEST(CsvParse, DelimiterAndLatin1Options) {
  CsvOptions o;
  o.delimiter = ';';
  o.encoding = "latin-1";
  CsvTable t = parse_csv_text("Pa\xEDs;2000\nS\xE3o Tom\xE9;1,5\n", o);
  EXPECT_EQ(t.header[0], "Pa\xC3\xADs");
  EXPECT_EQ(t.cell(0, 0), "S\xC3\xA3o Tom\xC3\xA9");
  EXPECT_EQ(t.cell(0, 1), "1,5");
}

TEST(CsvParse, RoundTripPropertyOverRandomTables) {
  const char alphabet[] = {'a', 'B', ',', '"', '\n', ' ', '1', '.'};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    CsvTable t;
    std::size_t cols = 1 + rng.Below(5), rows = rng.Below(6);
    for (std::size_t c = 0; c < cols; ++c) t.header.push_back("h" + std::to_string(c));
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<std::string> row;
      for (std::size_t c = 0; c < cols; ++c) {
        std::string cell;
        std::size_t len = rng.Below(6);
        for (std::size_t k = 0; k < len; ++k) cell += alphabet[rng.Below(sizeof alphabet)];
        row.push_back(cell);
      }
      // A row of empty cells in a one-column table serializes to a blank line.
      if (cols == 1 && row[0].empty()) row[0] = "x";
      t.rows.push_back(row);
    }
    CsvTable back = parse_csv_text(to_csv_text(t));
    EXPECT_EQ(back.header, t.header) << "seed " << seed;
    EXPECT_EQ(back.rows, t.rows) << "seed " << seed;
  }
}

TEST(Features, WideMatrix) {
  CsvTable t = testing::wide_matrix(30);
  ColumnFeatures f = extract_features(t);
  EXPECT_EQ(f.key_cols.size(), 4u);
  EXPECT_EQ(f.time_cols.size(), 22u);
  EXPECT_EQ(f.n_numeric, 22u);
  EXPECT_FALSE(f.fiscal);
  EXPECT_FALSE(f.transposed);
  EXPECT_FALSE(f.year_in_body);
}

TEST(Features, TransposedAndYearInBody) {
  CsvTable t = parse_csv_text(
      "Year,Male,Female\n2015,1.5,2.5\n2016,1.6,2.6\n2017,1.7,2.7\n");
  ColumnFeatures f = extract_features(t);
  EXPECT_TRUE(f.transposed);
  EXPECT_TRUE(f.year_in_body);
  EXPECT_TRUE(f.time_cols.empty());
}

TEST(Features, FiscalHeaders) {
  CsvTable t = parse_csv_text("Dept,2019-20,2020-21\nHealth,1.5,2.5\n");
  ColumnFeatures f = extract_features(t);
  EXPECT_TRUE(f.fiscal);
  EXPECT_EQ(f.time_cols.size(), 2u);
}

TEST(Features, ExcelEqualsPrefixIsText) {
  CsvTable t = parse_csv_text(
      "University Name,World Rank,2020,2021,2022\nAlpha,=1,1.5,2.5,3.5\nBeta,2,1.1,2.1,3.1\n");
  ColumnFeatures f = extract_features(t);
  EXPECT_EQ(f.key_cols.size(), 2u);
  EXPECT_EQ(f.time_cols.size(), 3u);
}

}  // namespace
}  // namespace csvkg
