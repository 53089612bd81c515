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

#include "csvkg/tokenizer.h"

namespace csvkg {
namespace {

bool IsDigit(unsigned char c) { return c >= '0' && c <= '9'; }
bool IsWordByte(unsigned char c) {
  return IsDigit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         c >= 0x80;
}

}  // namespace

std::vector<TokenSpan> token_spans(std::string_view s) {
  std::vector<TokenSpan> out;
  std::size_t i = 0, n = s.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (!IsWordByte(c)) {
      ++i;
      continue;
    }
    std::size_t b = i;
    if (IsDigit(c)) {
      while (i < n && IsDigit(static_cast<unsigned char>(s[i]))) ++i;
      auto digit_at = [&](std::size_t k) {
        return k < n && IsDigit(static_cast<unsigned char>(s[k]));
      };
      // Thousands groups: exactly three digits after each comma.
      while (i < n && s[i] == ',' && digit_at(i + 1) && digit_at(i + 2) &&
             digit_at(i + 3) && !digit_at(i + 4))
        i += 4;
      if (i < n && s[i] == '.' && digit_at(i + 1)) {
        ++i;
        while (digit_at(i)) ++i;
      }
      if (i < n && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t k = i + 1;
        if (k < n && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < n && IsDigit(static_cast<unsigned char>(s[k]))) {
          while (k < n && IsDigit(static_cast<unsigned char>(s[k]))) ++k;
          i = k;
        }
      }
      // A number glued to letters ("year2000x") continues as a word.
      while (i < n && IsWordByte(static_cast<unsigned char>(s[i]))) ++i;
    } else {
      while (i < n && IsWordByte(static_cast<unsigned char>(s[i]))) ++i;
    }
    out.push_back({b, i});
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& t : token_spans(s)) out.emplace_back(s.substr(t.begin, t.end - t.begin));
  return out;
}

std::size_t count_tokens(std::string_view s) { return token_spans(s).size(); }

}  // namespace csvkg
