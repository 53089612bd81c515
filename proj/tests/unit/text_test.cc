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

#include "csvkg/text.h"

#include <gtest/gtest.h>

namespace csvkg::text {
namespace {

TEST(ParseNumber, AcceptsPlainGroupedAndExponentForms) {
  EXPECT_EQ(*ParseNumber("42"), 42.0);
  EXPECT_EQ(*ParseNumber("-3.5"), -3.5);
  EXPECT_EQ(*ParseNumber("+7"), 7.0);
  EXPECT_EQ(*ParseNumber("1,234,567.25"), 1234567.25);
  EXPECT_EQ(*ParseNumber(" 3e-4 "), 3e-4);
  EXPECT_EQ(*ParseNumber(".5"), 0.5);
}

TEST(ParseNumber, RejectsSymbolsAndBadGroups) {
  EXPECT_FALSE(ParseNumber("=1"));
  EXPECT_FALSE(ParseNumber("$5"));
  EXPECT_FALSE(ParseNumber("1,23"));
  EXPECT_FALSE(ParseNumber("12a"));
  EXPECT_FALSE(ParseNumber(""));
  EXPECT_FALSE(ParseNumber("-"));
  EXPECT_FALSE(ParseNumber("0-14"));
}

TEST(Years, TokenAndHeaderForms) {
  EXPECT_TRUE(IsYearToken("2019"));
  EXPECT_TRUE(IsYearToken(" 1900 "));
  EXPECT_FALSE(IsYearToken("2100"));
  EXPECT_FALSE(IsYearToken("19999"));
  EXPECT_TRUE(ContainsYear("Population 2019"));
  EXPECT_FALSE(ContainsYear("ID 120193"));
  EXPECT_TRUE(ContainsFiscalYear("2019-20"));
  EXPECT_TRUE(ContainsFiscalYear("FY 2019/2020"));
  EXPECT_FALSE(ContainsFiscalYear("2019-2021"));
  EXPECT_EQ(YearLabel("Budget 2019-20 (est.)"), "2019-20");
  EXPECT_EQ(YearLabel("value_year2005"), "2005");
  EXPECT_EQ(YearLabel("Name"), "");
}

TEST(Text, DigitBoundedMatching) {
  EXPECT_TRUE(ContainsDigitBounded("2005: 77.4", "77.4"));
  EXPECT_FALSE(ContainsDigitBounded("177.45", "77.4"));
  EXPECT_TRUE(ContainsDigitBounded("x2005y", "2005"));
}

TEST(Text, NumberTokensReadGroupsAndSplitLists) {
  auto t = NumberTokens("pop 1,234 and 5,6");
  std::vector<double> values;
  for (const auto& n : t) values.push_back(n.value);
  EXPECT_NE(std::find(values.begin(), values.end(), 1234.0), values.end());
  EXPECT_NE(std::find(values.begin(), values.end(), 5.0), values.end());
  EXPECT_NE(std::find(values.begin(), values.end(), 6.0), values.end());
}

TEST(Text, FormatAndCompareNumbers) {
  EXPECT_EQ(FormatNumber(77.4), "77.4");
  EXPECT_EQ(FormatNumber(0.0), "0");
  EXPECT_EQ(FormatNumber(-0.0), "0");
  EXPECT_TRUE(NumbersEqual(0.1 + 0.2, 0.3));
  EXPECT_FALSE(NumbersEqual(1.0, 1.001));
}

TEST(Text, NormalizationHelpers) {
  EXPECT_EQ(Normalize("  United   KINGDOM "), "united kingdom");
  EXPECT_TRUE(IContains("Hong Kong SAR", "kong"));
  EXPECT_FALSE(IContains("abc", ""));
  EXPECT_EQ(Utf8Length("S\xC3\xA3o Tom\xC3\xA9"), 8u);
  EXPECT_EQ(Latin1ToUtf8("S\xE3o"), "S\xC3\xA3o");
  EXPECT_EQ(Join(Split("a, b, c", ", "), "|"), "a|b|c");
}

TEST(Text, QuotedJoinSplitRoundTrip) {
  std::vector<std::string> parts{"plain", "Bonaire, Sint", "say \"hi\"", "", "a,b"};
  for (std::string sep : {", ", ","}) {
    std::string joined = text::JoinQuoted(parts, sep);
    EXPECT_EQ(text::SplitQuoted(joined, sep), parts) << joined;
  }
  EXPECT_EQ(text::JoinQuoted({"x", "y, z"}, ", "), "x, \"y, z\"");
}

}  // namespace
}  // namespace csvkg::text
