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

#include "csvkg/serialization.h"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>

#include "json.hpp"

#include "csvkg/error.h"
#include "csvkg/prng.h"
#include "csvkg/text.h"
#include "csvkg/tokenizer.h"

namespace csvkg {
namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kFieldSep = " | ";
constexpr const char* kPairSep = ": ";

std::string ChunkId(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "chunk-%04zu", i);
  return buf;
}

std::string Label(const std::string& header) {
  std::string l(header);
  std::replace(l.begin(), l.end(), ' ', '_');
  return l;
}

std::string MarkdownCell(const std::string& s) {
  std::string out = text::ReplaceAll(s, "|", "\\|");
  return text::ReplaceAll(out, "\n", " ");
}

std::string MarkdownLine(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) out += " " + MarkdownCell(c) + " |";
  return out;
}

std::string MarkdownHeader(const CsvTable& t) {
  std::string out = MarkdownLine(t.header) + "\n|";
  for (std::size_t i = 0; i < t.n_cols(); ++i) out += "---|";
  return out;
}

std::string JsonRecord(const CsvTable& t, std::size_t r) {
  ojson o = ojson::object();
  for (std::size_t c = 0; c < t.n_cols(); ++c)
    if (!t.rows[r][c].empty()) o[t.header[c]] = t.rows[r][c];
  return o.dump();
}

std::string RowLocal(const CsvTable& t, std::size_t r) {
  return "Headers: " + text::JoinQuoted(t.header, ", ") + "\nRow " +
         std::to_string(r) + ": " + text::JoinQuoted(t.rows[r], ", ");
}

// Greedy packing of row units under a token budget. `prefix` (e.g. a
// markdown header) is repeated at the top of every chunk.
ChunkSet Pack(const std::vector<std::string>& units, const std::string& prefix,
              const std::string& joiner, const SerializeOptions& o) {
  ChunkSet cs;
  cs.format = o.format;
  cs.prose = o.prose;
  cs.chunk_token_budget = o.budget;
  const std::size_t prefix_tokens = count_tokens(prefix);
  std::string cur;
  std::size_t cur_tokens = 0, first = 0, n_in = 0;
  auto flush = [&](std::size_t end) {
    if (n_in == 0) return;
    Chunk c;
    c.id = ChunkId(cs.chunks.size());
    c.text = prefix.empty() ? cur : prefix + "\n" + cur;
    c.row_span = {first, end};
    cs.chunks.push_back(std::move(c));
    cur.clear();
    cur_tokens = 0;
    n_in = 0;
  };
  for (std::size_t r = 0; r < units.size(); ++r) {
    std::size_t t = count_tokens(units[r]);
    if (prefix_tokens + t > o.budget)
      throw InvalidArgument("chunk budget " + std::to_string(o.budget) +
                            " is smaller than row " + std::to_string(r) +
                            " (" + std::to_string(prefix_tokens + t) +
                            " tokens)");
    bool fits = prefix_tokens + cur_tokens + t <= o.budget;
    if (n_in > 0 && (o.one_row_per_chunk || !fits)) flush(r);
    if (n_in == 0) first = r;
    if (n_in > 0) cur += joiner;
    cur += units[r];
    cur_tokens += t;
    ++n_in;
  }
  flush(units.size());
  return cs;
}

ChunkSet Naive(const CsvTable& t, const SerializeOptions& o) {
  if (o.budget == 0) throw InvalidArgument("chunk budget must be positive");
  const std::string raw = to_csv_text(t);
  // Byte offset where each data row's line starts; header is line 0.
  std::vector<std::size_t> row_start;
  {
    CsvTable header_only;
    header_only.header = t.header;
    std::size_t off = to_csv_text(header_only).size();
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
      row_start.push_back(off);
      CsvTable one;
      one.header = t.rows[r];
      off += to_csv_text(one).size();
    }
    row_start.push_back(off);
  }
  auto spans = token_spans(raw);
  std::vector<std::size_t> cuts = {0};
  for (std::size_t k = o.budget; k < spans.size(); k += o.budget)
    cuts.push_back(spans[k].begin);
  cuts.push_back(raw.size());

  ChunkSet cs;
  cs.format = Format::kNaive;
  cs.chunk_token_budget = o.budget;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    std::size_t b = cuts[i], e = cuts[i + 1];
    if (b == e) continue;
    Chunk c;
    c.id = ChunkId(cs.chunks.size());
    c.text = raw.substr(b, e - b);
    std::size_t lo = t.n_rows(), hi = 0;
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
      if (row_start[r] < e && row_start[r + 1] > b) {
        lo = std::min(lo, r);
        hi = r + 1;
      }
    }
    c.row_span = lo < hi ? std::make_pair(lo, hi) : std::make_pair(hi, hi);
    cs.chunks.push_back(std::move(c));
  }
  return cs;
}

}  // namespace

std::string to_string(Format f) {
  switch (f) {
    case Format::kSge: return "sge";
    case Format::kMarkdown: return "markdown";
    case Format::kJsonRecords: return "json-records";
    case Format::kRowLocal: return "row-local";
    case Format::kNaive: return "naive";
  }
  return "sge";
}

Format parse_format(const std::string& s) {
  for (Format f : {Format::kSge, Format::kMarkdown, Format::kJsonRecords,
                   Format::kRowLocal, Format::kNaive})
    if (to_string(f) == s) return f;
  throw InvalidArgument("unknown format: " + s);
}

bool is_row_preserving(Format f) { return f != Format::kNaive; }

std::string sge_row(const CsvTable& t, std::size_t r,
                    const SerializeOptions& o) {
  std::vector<std::string> fields;
  for (std::size_t c = 0; c < t.n_cols(); ++c) {
    const std::string& v = t.rows[r][c];
    if (v.empty()) continue;
    std::string year = o.prose ? text::YearLabel(t.header[c]) : "";
    if (!year.empty()) {
      std::string f = o.prose_stem + "_year" + year + "=" + v;
      if (!o.prose_unit.empty()) f += " " + o.prose_unit;
      fields.push_back(std::move(f));
    } else {
      fields.push_back(Label(t.header[c]) + kPairSep + v);
    }
  }
  return text::Join(fields, kFieldSep);
}

ChunkSet serialize(const CsvTable& t, const Topology& topology,
                   const SerializeOptions& o) {
  (void)topology;
  if (o.budget == 0) throw InvalidArgument("chunk budget must be positive");
  std::vector<std::string> units;
  switch (o.format) {
    case Format::kSge:
      for (std::size_t r = 0; r < t.n_rows(); ++r)
        units.push_back(sge_row(t, r, o));
      return Pack(units, "", o.drop_row_delimiters ? " " : "\n", o);
    case Format::kMarkdown:
      for (std::size_t r = 0; r < t.n_rows(); ++r)
        units.push_back(MarkdownLine(t.rows[r]));
      return Pack(units, MarkdownHeader(t), "\n", o);
    case Format::kJsonRecords:
      for (std::size_t r = 0; r < t.n_rows(); ++r)
        units.push_back(JsonRecord(t, r));
      return Pack(units, "", "\n", o);
    case Format::kRowLocal: {
      SerializeOptions one = o;
      one.one_row_per_chunk = true;
      for (std::size_t r = 0; r < t.n_rows(); ++r)
        units.push_back(RowLocal(t, r));
      return Pack(units, "", "\n", one);
    }
    case Format::kNaive:
      return Naive(t, o);
  }
  throw InvalidArgument("unknown format");
}

std::string to_string(Ablation a) {
  return "M" + std::to_string(static_cast<int>(a));
}

Ablation parse_ablation(const std::string& s) {
  if (s.size() == 2 && s[0] == 'M' && s[1] >= '0' && s[1] <= '6')
    return static_cast<Ablation>(s[1] - '0');
  throw InvalidArgument("unknown ablation condition: " + s);
}

namespace {

bool IsWordByte(char ch) {
  unsigned char c = static_cast<unsigned char>(ch);
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

// Replaces whole-token occurrences of each term (longest first).
std::string MaskTerms(const std::string& s, std::vector<std::string> terms,
                      const std::string& mask) {
  std::sort(terms.begin(), terms.end(),
            [](const std::string& a, const std::string& b) {
              return a.size() != b.size() ? a.size() > b.size() : a < b;
            });
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    bool at_boundary = i == 0 || !IsWordByte(s[i - 1]);
    bool hit = false;
    if (at_boundary) {
      for (const auto& t : terms) {
        if (t.empty() || s.compare(i, t.size(), t) != 0) continue;
        std::size_t e = i + t.size();
        if (e < s.size() && IsWordByte(s[e])) continue;
        out += mask;
        i = e;
        hit = true;
        break;
      }
    }
    if (!hit) out.push_back(s[i++]);
  }
  return out;
}

std::vector<std::string> Lines(const std::string& s, bool* trailing_nl) {
  std::vector<std::string> lines = text::Split(s, "\n");
  *trailing_nl = !lines.empty() && lines.back().empty() && s.size() > 0;
  if (*trailing_nl) lines.pop_back();
  return lines;
}

std::string Unlines(const std::vector<std::string>& lines, bool trailing_nl) {
  std::string out = text::Join(lines, "\n");
  if (trailing_nl) out += "\n";
  return out;
}

// Number of leading header lines in a chunk that row shuffles keep fixed.
std::size_t HeaderLines(const ChunkSet& cs, std::size_t chunk_index) {
  switch (cs.format) {
    case Format::kMarkdown: return 2;
    case Format::kRowLocal: return 1;
    case Format::kNaive:
      return chunk_index == 0 && !cs.chunks.empty() &&
                     cs.chunks[0].row_span.first == 0
                 ? 1
                 : 0;
    default: return 0;
  }
}

struct Field {
  std::string label;
  std::string sep;
  std::string value;
  std::string unit;
};

// Splits an sge field into label / separator / value (/ unit for prose).
Field ParseSgeField(const std::string& f) {
  Field out;
  std::size_t p = f.find(kPairSep);
  std::size_t q = f.find('=');
  if (p != std::string::npos && (q == std::string::npos || p < q)) {
    out.label = f.substr(0, p);
    out.sep = kPairSep;
    out.value = f.substr(p + 2);
  } else if (q != std::string::npos) {
    out.label = f.substr(0, q);
    out.sep = "=";
    std::string rest = f.substr(q + 1);
    std::size_t sp = rest.find(' ');
    out.value = sp == std::string::npos ? rest : rest.substr(0, sp);
    out.unit = sp == std::string::npos ? "" : rest.substr(sp);
  } else {
    out.value = f;
  }
  return out;
}

std::string JoinField(const Field& f) {
  return f.label + f.sep + f.value + f.unit;
}

std::string MapSgeFields(const std::string& line,
                         const std::function<void(Field&)>& fn) {
  std::vector<std::string> fields = text::Split(line, kFieldSep);
  for (auto& raw : fields) {
    Field f = ParseSgeField(raw);
    fn(f);
    raw = JoinField(f);
  }
  return text::Join(fields, kFieldSep);
}

std::string MaskNumbers(const std::string& s,
                        const std::vector<std::string>& labels) {
  std::string out;
  std::size_t last = 0;
  for (const auto& t : token_spans(s)) {
    std::string tok = s.substr(t.begin, t.end - t.begin);
    if (!text::IsNumber(tok)) continue;
    if (std::find(labels.begin(), labels.end(), tok) != labels.end()) continue;
    std::size_t b = t.begin;
    if (b > 0 && s[b - 1] == '-' && (b < 2 || !IsWordByte(s[b - 2]))) --b;
    out += s.substr(last, b - last) + "NNN";
    last = t.end;
  }
  return out + s.substr(last);
}

std::string ShuffleFields(const std::string& line, Format format, Rng& rng) {
  switch (format) {
    case Format::kSge: {
      auto fields = text::Split(line, kFieldSep);
      rng.Shuffle(fields);
      return text::Join(fields, kFieldSep);
    }
    case Format::kMarkdown: {
      if (line.size() < 2 || line.front() != '|') return line;
      std::string inner = line.substr(1, line.size() - 2);
      auto cells = text::Split(inner, "|");
      rng.Shuffle(cells);
      return "|" + text::Join(cells, "|") + "|";
    }
    case Format::kJsonRecords: {
      ojson o = ojson::parse(line, nullptr, false);
      if (o.is_discarded() || !o.is_object()) return line;
      std::vector<std::pair<std::string, ojson>> kv;
      for (auto it = o.begin(); it != o.end(); ++it)
        kv.emplace_back(it.key(), it.value());
      rng.Shuffle(kv);
      ojson r = ojson::object();
      for (auto& [k, v] : kv) r[k] = v;
      return r.dump();
    }
    case Format::kRowLocal: {
      std::size_t p = line.find(": ");
      if (line.rfind("Row ", 0) != 0 || p == std::string::npos) return line;
      auto cells = text::SplitQuoted(line.substr(p + 2), ", ");
      rng.Shuffle(cells);
      return line.substr(0, p + 2) + text::JoinQuoted(cells, ", ");
    }
    case Format::kNaive: {
      auto cells = text::SplitQuoted(line, ",");
      rng.Shuffle(cells);
      return text::JoinQuoted(cells, ",");
    }
  }
  return line;
}

}  // namespace

ChunkSet ablate(const ChunkSet& input, const AblationCondition& cond,
                const std::vector<std::string>& column_labels,
                const std::vector<std::string>& entity_names) {
  ChunkSet cs = input;
  if (cond.tag == Ablation::kM0) return cs;
  if ((cond.tag == Ablation::kM1 || cond.tag == Ablation::kM4) &&
      column_labels.empty() && cs.format != Format::kSge)
    throw InvalidArgument(to_string(cond.tag) + " requires column labels");
  if (cond.tag == Ablation::kM3 && entity_names.empty())
    throw InvalidArgument("M3 requires entity names");

  std::vector<std::string> label_forms;
  for (const auto& l : column_labels) {
    label_forms.push_back(l);
    label_forms.push_back(Label(l));
  }

  for (std::size_t ci = 0; ci < cs.chunks.size(); ++ci) {
    Chunk& chunk = cs.chunks[ci];
    bool nl = false;
    std::vector<std::string> lines = Lines(chunk.text, &nl);
    const std::size_t fixed = HeaderLines(cs, ci);
    Rng rng = Rng::Substream(cond.seed, ci);

    switch (cond.tag) {
      case Ablation::kM0:
        break;
      case Ablation::kM1:
        for (auto& line : lines) {
          if (cs.format == Format::kSge)
            line = MapSgeFields(line, [](Field& f) {
              if (!f.sep.empty()) f.label = "COLX";
            });
          else
            line = MaskTerms(line, label_forms, "COLX");
        }
        break;
      case Ablation::kM2:
        for (auto& line : lines) {
          switch (cs.format) {
            case Format::kSge:
              line = text::ReplaceAll(line, kFieldSep, " ");
              line = text::ReplaceAll(line, kPairSep, " ");
              line = text::ReplaceAll(line, "=", " ");
              break;
            case Format::kMarkdown:
              line = text::ReplaceAll(line, "|", " ");
              break;
            case Format::kJsonRecords:
              for (char ch : std::string("{}\":,"))
                line = text::ReplaceAll(line, std::string(1, ch), " ");
              break;
            case Format::kRowLocal:
              line = text::ReplaceAll(line, ": ", " ");
              line = text::ReplaceAll(line, ", ", " ");
              break;
            case Format::kNaive:
              line = text::ReplaceAll(line, ",", " ");
              break;
          }
        }
        break;
      case Ablation::kM3:
        for (auto& line : lines) {
          if (cs.format == Format::kSge)
            line = MapSgeFields(line, [&](Field& f) {
              f.value = MaskTerms(f.value, entity_names, "XXX");
            });
          else
            line = MaskTerms(line, entity_names, "XXX");
        }
        break;
      case Ablation::kM4:
        for (std::size_t li = 0; li < lines.size(); ++li) {
          auto& line = lines[li];
          if (cs.format == Format::kSge) {
            line = MapSgeFields(line, [](Field& f) {
              if (text::IsNumber(f.value)) f.value = "NNN";
            });
          } else if (li >= fixed) {
            if (cs.format == Format::kRowLocal) {
              std::size_t p = line.find(": ");
              if (p != std::string::npos)
                line = line.substr(0, p + 2) +
                       MaskNumbers(line.substr(p + 2), column_labels);
            } else {
              line = MaskNumbers(line, column_labels);
            }
          }
        }
        break;
      case Ablation::kM5:
        for (std::size_t li = fixed; li < lines.size(); ++li)
          lines[li] = ShuffleFields(lines[li], cs.format, rng);
        break;
      case Ablation::kM6:
        if (lines.size() > fixed + 1) {
          std::vector<std::string> body(lines.begin() + fixed, lines.end());
          rng.Shuffle(body);
          std::copy(body.begin(), body.end(), lines.begin() + fixed);
        }
        break;
    }
    chunk.text = Unlines(lines, nl);
  }
  return cs;
}

std::string chunks_to_jsonl(const ChunkSet& cs) {
  std::string out;
  for (const auto& c : cs.chunks) {
    ojson o;
    o["id"] = c.id;
    o["format"] = to_string(cs.format);
    o["text"] = c.text;
    o["row_span"] = {c.row_span.first, c.row_span.second};
    out += o.dump() + "\n";
  }
  return out;
}

ChunkSet chunks_from_jsonl(const std::string& textin) {
  ChunkSet cs;
  std::istringstream in(textin);
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::Trim(line).empty()) continue;
    ojson o = ojson::parse(line, nullptr, false);
    if (o.is_discarded() || !o.is_object() || !o.contains("text") ||
        !o["text"].is_string())
      throw ParseError("malformed chunk record", lineno);
    Chunk c;
    c.id = o.value("id", ChunkId(cs.chunks.size()));
    c.text = o["text"].get<std::string>();
    if (o.contains("row_span") && o["row_span"].is_array() &&
        o["row_span"].size() == 2)
      c.row_span = {o["row_span"][0].get<std::size_t>(),
                    o["row_span"][1].get<std::size_t>()};
    if (first && o.contains("format"))
      cs.format = parse_format(o["format"].get<std::string>());
    first = false;
    cs.chunks.push_back(std::move(c));
  }
  return cs;
}

}  // namespace csvkg
