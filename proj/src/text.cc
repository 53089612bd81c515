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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace csvkg {
namespace text {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
bool IsAlnum(char c) {
  return IsDigit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         static_cast<unsigned char>(c) >= 0x80;
}
char Lower(char c) { return (c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c; }

int ParseInt(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

struct DigitRun {
  std::size_t begin;
  std::size_t end;
};

std::vector<DigitRun> DigitRuns(std::string_view s) {
  std::vector<DigitRun> runs;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!IsDigit(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && IsDigit(s[j])) ++j;
    runs.push_back({i, j});
    i = j;
  }
  return runs;
}

bool IsYearRun(std::string_view s, const DigitRun& r) {
  if (r.end - r.begin != 4) return false;
  int y = ParseInt(s.substr(r.begin, 4));
  return y >= 1900 && y <= 2099;
}

// Length of the fiscal form starting at year run `i`, or 0.
std::size_t FiscalAt(std::string_view s, const std::vector<DigitRun>& runs,
                     std::size_t i) {
  const DigitRun& r = runs[i];
  if (!IsYearRun(s, r) || i + 1 >= runs.size()) return 0;
  const DigitRun& n = runs[i + 1];
  if (n.begin != r.end + 1) return 0;
  char sep = s[r.end];
  if (sep != '-' && sep != '/') return 0;
  int y = ParseInt(s.substr(r.begin, 4));
  std::size_t len = n.end - n.begin;
  if (len == 2) {
    if (n.end < s.size() && (s[n.end] == '-' || s[n.end] == '/') &&
        n.end + 1 < s.size() && IsDigit(s[n.end + 1]))
      return 0;
    return n.end - r.begin;
  }
  if (len == 4 && ParseInt(s.substr(n.begin, 4)) == y + 1)
    return n.end - r.begin;
  return 0;
}

std::optional<double> ConvertClean(std::string_view digits) {
  std::string buf;
  buf.reserve(digits.size());
  for (char c : digits)
    if (c != ',' && c != '+') buf.push_back(c);
  double v = 0.0;
  auto res = std::from_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc() || res.ptr != buf.data() + buf.size())
    return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::string_view Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && IsSpace(s[b])) ++b;
  while (e > b && IsSpace(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = Lower(c);
  return out;
}

bool IContains(std::string_view haystack, std::string_view needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    std::size_t k = 0;
    while (k < needle.size() && Lower(haystack[i + k]) == Lower(needle[k])) ++k;
    if (k == needle.size()) return true;
  }
  return false;
}

std::string Normalize(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : Trim(s)) {
    if (IsSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(Lower(c));
  }
  return out;
}

std::string ReplaceAll(std::string s, std::string_view from,
                       std::string_view to) {
  if (from.empty()) return s;
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

std::vector<std::string> Split(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.emplace_back(s.substr(pos));
      return out;
    }
    out.emplace_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::string JoinQuoted(const std::vector<std::string>& parts,
                       std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    const std::string& p = parts[i];
    if (p.find(sep) == std::string::npos && p.find('"') == std::string::npos) {
      out.append(p);
      continue;
    }
    out.push_back('"');
    for (char c : p) {
      if (c == '"') out.push_back('"');
      out.push_back(c);
    }
    out.push_back('"');
  }
  return out;
}

std::vector<std::string> SplitQuoted(std::string_view s, std::string_view sep) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quoted) {
      if (c == '"' && i + 1 < s.size() && s[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (!sep.empty() && s.compare(i, sep.size(), sep) == 0) {
      out.push_back(std::move(cur));
      cur.clear();
      i += sep.size() - 1;
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::size_t Utf8Length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string Latin1ToUtf8(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::optional<double> ParseNumber(std::string_view raw) {
  std::string_view s = Trim(raw);
  std::size_t i = 0, n = s.size();
  if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_begin = i;
  while (i < n && IsDigit(s[i])) ++i;
  std::size_t lead = i - int_begin;
  if (i < n && s[i] == ',') {
    if (lead < 1 || lead > 3) return std::nullopt;
    while (i < n && s[i] == ',') {
      for (int k = 1; k <= 3; ++k)
        if (i + k >= n || !IsDigit(s[i + k])) return std::nullopt;
      i += 4;
      if (i < n && IsDigit(s[i])) return std::nullopt;
    }
  }
  bool has_digits = i > int_begin;
  if (i < n && s[i] == '.') {
    ++i;
    std::size_t f = i;
    while (i < n && IsDigit(s[i])) ++i;
    has_digits = has_digits || i > f;
  }
  if (!has_digits) return std::nullopt;
  if (i < n && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t e = i;
    while (i < n && IsDigit(s[i])) ++i;
    if (i == e) return std::nullopt;
  }
  if (i != n) return std::nullopt;
  return ConvertClean(s);
}

bool IsYearToken(std::string_view s) {
  s = Trim(s);
  if (s.size() != 4) return false;
  for (char c : s)
    if (!IsDigit(c)) return false;
  int y = ParseInt(s);
  return y >= 1900 && y <= 2099;
}

bool ContainsYear(std::string_view header) {
  for (const auto& r : DigitRuns(header))
    if (IsYearRun(header, r)) return true;
  return false;
}

bool ContainsFiscalYear(std::string_view header) {
  auto runs = DigitRuns(header);
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (FiscalAt(header, runs, i)) return true;
  return false;
}

std::string YearLabel(std::string_view header) {
  auto runs = DigitRuns(header);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (std::size_t len = FiscalAt(header, runs, i))
      return std::string(header.substr(runs[i].begin, len));
    if (IsYearRun(header, runs[i]))
      return std::string(header.substr(runs[i].begin, 4));
  }
  return {};
}

bool ContainsDigitBounded(std::string_view text, std::string_view token) {
  if (token.empty()) return false;
  bool lead_digit = IsDigit(token.front());
  bool tail_digit = IsDigit(token.back());
  std::size_t pos = 0;
  while ((pos = text.find(token, pos)) != std::string_view::npos) {
    bool ok_before = !lead_digit || pos == 0 || !IsDigit(text[pos - 1]);
    std::size_t end = pos + token.size();
    bool ok_after = !tail_digit || end >= text.size() || !IsDigit(text[end]);
    if (ok_before && ok_after) return true;
    ++pos;
  }
  return false;
}

std::vector<NumberToken> NumberTokens(std::string_view s) {
  std::vector<NumberToken> out;
  std::size_t i = 0, n = s.size();
  while (i < n) {
    bool neg = s[i] == '-' && i + 1 < n && IsDigit(s[i + 1]) &&
               (i == 0 || !(IsAlnum(s[i - 1]) || s[i - 1] == '.'));
    if (!IsDigit(s[i]) && !neg) {
      ++i;
      continue;
    }
    if (IsDigit(s[i]) && i > 0 && s[i - 1] == '.' && i > 1 &&
        IsDigit(s[i - 2])) {
      ++i;
      continue;
    }
    std::size_t b = i;
    std::size_t j = neg ? i + 1 : i;
    while (j < n && IsDigit(s[j])) ++j;
    while (j + 1 < n && (s[j] == '.' || s[j] == ',') && IsDigit(s[j + 1])) {
      ++j;
      while (j < n && IsDigit(s[j])) ++j;
    }
    if (j < n && (s[j] == 'e' || s[j] == 'E')) {
      std::size_t k = j + 1;
      if (k < n && (s[k] == '+' || s[k] == '-')) ++k;
      if (k < n && IsDigit(s[k])) {
        while (k < n && IsDigit(s[k])) ++k;
        j = k;
      }
    }
    std::string_view tok = s.substr(b, j - b);
    if (auto v = ParseNumber(tok)) out.push_back({b, j, *v});
    if (tok.find(',') != std::string_view::npos) {
      std::size_t p = b;
      while (p < j) {
        std::size_t q = s.find(',', p);
        if (q == std::string_view::npos || q > j) q = j;
        std::string_view piece = s.substr(p, q - p);
        if (auto v = ParseNumber(piece)) out.push_back({p, q, *v});
        p = q + 1;
      }
    }
    i = j;
  }
  return out;
}

std::string FormatNumber(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool NumbersEqual(double a, double b, double rel_tol) {
  if (a == b) return true;
  double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= rel_tol * scale;
}

}  // namespace text
}  // namespace csvkg
