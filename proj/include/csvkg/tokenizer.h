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

// Whitespace-and-punctuation tokenizer shared by chunk budgets and TTF.
//   number: digits, optional ",ddd" thousands groups, one optional
//           fraction and an optional exponent ("1,234.5", "3e-4");
//           "1.5,2.5" is two numbers
//   word:   run of ASCII letters/digits or bytes >= 0x80
// Every other byte, including '_', separates tokens and is dropped.
struct TokenSpan {
  std::size_t begin;
  std::size_t end;
};

std::vector<TokenSpan> token_spans(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);
std::size_t count_tokens(std::string_view text);

}  // namespace csvkg
