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

#include "csvkg/host.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "csvkg/error.h"
#include "csvkg/parallel.h"
#include "csvkg/text.h"
#include "csvkg/tokenizer.h"

namespace csvkg {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct PendingNode {
  Node node;
  bool unique = false;  // value nodes get a fresh id on collision
};

struct ChunkOutput {
  std::vector<PendingNode> nodes;
  std::vector<Edge> edges;
  std::vector<ExtractionEvent> events;
  std::size_t anchored_rows = 0;
  std::size_t refusals = 0;
};

std::vector<std::string> SplitMarkdown(const std::string& line) {
  std::string s(text::Trim(line));
  if (!s.empty() && s.front() == '|') s.erase(0, 1);
  if (!s.empty() && s.back() == '|' && (s.size() < 2 || s[s.size() - 2] != '\\'))
    s.pop_back();
  std::vector<std::string> cells;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == '|') {
      cur.push_back('|');
      ++i;
    } else if (s[i] == '|') {
      cells.emplace_back(text::Trim(cur));
      cur.clear();
    } else {
      cur.push_back(s[i]);
    }
  }
  cells.emplace_back(text::Trim(cur));
  return cells;
}

std::vector<std::string> Lines(const std::string& s) {
  std::vector<std::string> out;
  for (auto& l : text::Split(s, "\n"))
    if (!text::Trim(l).empty()) out.push_back(l);
  return out;
}

ChunkField SgeField(const std::string& raw, bool prose) {
  ChunkField f;
  std::size_t p = raw.find(": ");
  std::size_t q = raw.find('=');
  if (p != std::string::npos && (q == std::string::npos || p < q)) {
    f.label = std::string(text::Trim(raw.substr(0, p)));
    f.value = std::string(text::Trim(raw.substr(p + 2)));
  } else if (q != std::string::npos) {
    std::string left = raw.substr(0, q);
    std::string year = prose ? text::YearLabel(left) : "";
    f.label = year.empty() ? std::string(text::Trim(left)) : year;
    std::string rest(text::Trim(raw.substr(q + 1)));
    std::size_t sp = rest.find(' ');
    f.value = sp == std::string::npos ? rest : rest.substr(0, sp);
  } else {
    f.value = std::string(text::Trim(raw));
  }
  return f;
}

std::string FieldValue(const std::vector<ChunkField>& row,
                       const std::string& label) {
  for (const auto& f : row)
    if (labels_token_equal(f.label, label)) return f.value;
  return {};
}

std::string Lower(const std::string& s) { return text::ToLower(s); }

}  // namespace

std::string to_string(SurrogateMode m) {
  switch (m) {
    case SurrogateMode::kFaithful: return "faithful";
    case SurrogateMode::kProliferate: return "proliferate";
    case SurrogateMode::kRefuse: return "refuse";
    case SurrogateMode::kRelationDrop: return "relation_drop";
  }
  return "faithful";
}

SurrogateMode parse_surrogate_mode(const std::string& s) {
  for (SurrogateMode m : {SurrogateMode::kFaithful, SurrogateMode::kProliferate,
                          SurrogateMode::kRefuse, SurrogateMode::kRelationDrop})
    if (to_string(m) == s) return m;
  throw InvalidArgument("unknown surrogate mode: " + s);
}

std::string to_string(AnchorMatch m) {
  return m == AnchorMatch::kExactToken ? "exact_token" : "none";
}

AnchorMatch parse_anchor_match(const std::string& s) {
  if (s == "exact_token") return AnchorMatch::kExactToken;
  if (s == "none") return AnchorMatch::kNone;
  throw InvalidArgument("unknown anchor match: " + s);
}

bool labels_token_equal(const std::string& a, const std::string& b) {
  auto ta = tokenize(Lower(a)), tb = tokenize(Lower(b));
  return !ta.empty() && ta == tb;
}

std::vector<std::vector<ChunkField>> chunk_rows(const Chunk& chunk,
                                                Format format, bool prose,
                                                bool has_header) {
  std::vector<std::vector<ChunkField>> rows;
  std::vector<std::string> lines = Lines(chunk.text);
  switch (format) {
    case Format::kSge:
      for (const auto& line : lines) {
        std::vector<ChunkField> fields;
        for (const auto& raw : text::Split(line, " | "))
          fields.push_back(SgeField(raw, prose));
        // Rows joined without a delimiter restart at the first label.
        std::vector<ChunkField> row;
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (i > 0 && !fields[0].label.empty() &&
              fields[i].label == fields[0].label && !row.empty()) {
            rows.push_back(std::move(row));
            row.clear();
          }
          row.push_back(fields[i]);
        }
        if (!row.empty()) rows.push_back(std::move(row));
      }
      break;
    case Format::kMarkdown: {
      if (lines.empty()) break;
      auto header = SplitMarkdown(lines[0]);
      for (std::size_t i = 1; i < lines.size(); ++i) {
        if (text::Trim(lines[i]).rfind("|---", 0) == 0) continue;
        auto cells = SplitMarkdown(lines[i]);
        std::vector<ChunkField> row;
        for (std::size_t c = 0; c < cells.size(); ++c)
          row.push_back({c < header.size() ? header[c] : "", cells[c]});
        rows.push_back(std::move(row));
      }
      break;
    }
    case Format::kJsonRecords:
      for (const auto& line : lines) {
        ojson o = ojson::parse(line, nullptr, false);
        if (o.is_discarded() || !o.is_object()) continue;
        std::vector<ChunkField> row;
        for (auto it = o.begin(); it != o.end(); ++it)
          row.push_back({it.key(), it.value().is_string()
                                       ? it.value().get<std::string>()
                                       : it.value().dump()});
        rows.push_back(std::move(row));
      }
      break;
    case Format::kRowLocal: {
      std::vector<std::string> header;
      for (const auto& line : lines) {
        if (line.rfind("Headers: ", 0) == 0) {
          header = text::SplitQuoted(line.substr(9), ", ");
          continue;
        }
        std::size_t p = line.find(": ");
        if (line.rfind("Row ", 0) != 0 || p == std::string::npos) continue;
        auto cells = text::SplitQuoted(line.substr(p + 2), ", ");
        std::vector<ChunkField> row;
        for (std::size_t c = 0; c < cells.size(); ++c)
          row.push_back({c < header.size() ? header[c] : "",
                         std::string(text::Trim(cells[c]))});
        rows.push_back(std::move(row));
      }
      break;
    }
    case Format::kNaive: {
      std::vector<std::string> header;
      for (std::size_t i = 0; i < lines.size(); ++i) {
        auto cells = text::SplitQuoted(lines[i], ",");
        if (i == 0 && has_header) {
          header = cells;
          continue;
        }
        std::vector<ChunkField> row;
        for (std::size_t c = 0; c < cells.size(); ++c)
          row.push_back({c < header.size() ? header[c] : "",
                         std::string(text::Trim(cells[c]))});
        rows.push_back(std::move(row));
      }
      break;
    }
  }
  return rows;
}

namespace {

struct Anchor {
  std::string column_ref;
  std::string type_name;
  std::vector<std::string> roles;
};

std::optional<Anchor> SchemaAnchor(const MetaSchema& s) {
  if (s.entity_types.empty() || !s.entity_types[0].column_ref) return {};
  Anchor a;
  a.column_ref = *s.entity_types[0].column_ref;
  a.type_name = s.entity_types[0].type_name;
  std::set<std::string> cols(s.source_columns.begin(), s.source_columns.end());
  for (const auto& r : s.relation_templates) {
    for (const auto& t : r.time_role) a.roles.push_back(t);
    if (cols.count(r.value_role)) a.roles.push_back(r.value_role);
  }
  return a;
}

void EmitBinding(ChunkOutput& out, const std::string& entity,
                 const ChunkField& f) {
  const std::string binding = f.label + ": " + f.value;
  Node v{entity + " " + f.label, entity + " " + f.label, "StatValue", binding};
  out.nodes.push_back({v, true});
  out.edges.push_back({entity, v.id, binding, f.label});
}

ChunkOutput ExtractWithSchema(const Chunk& chunk,
                              const std::vector<std::vector<ChunkField>>& rows,
                              const std::optional<Anchor>& anchor,
                              const SurrogateConfig& cfg) {
  ChunkOutput out;
  bool any = false;
  if (anchor && cfg.anchor_match == AnchorMatch::kExactToken) {
    for (const auto& row : rows) {
      std::string entity = FieldValue(row, anchor->column_ref);
      if (entity.empty()) continue;
      any = true;
      ++out.anchored_rows;
      out.nodes.push_back({{entity, entity, anchor->type_name,
                            anchor->column_ref + ": " + entity},
                           false});
      if (cfg.mode == SurrogateMode::kRelationDrop) continue;
      for (const auto& f : row) {
        if (f.value.empty() || labels_token_equal(f.label, anchor->column_ref))
          continue;
        bool role = false;
        for (const auto& r : anchor->roles)
          if (labels_token_equal(f.label, r)) role = true;
        if (role) EmitBinding(out, entity, f);
      }
    }
  }
  if (any) return out;
  switch (cfg.mode) {
    case SurrogateMode::kFaithful:
    case SurrogateMode::kRelationDrop:
      out.events.push_back({chunk.id, "no_anchor", "schema anchor not found"});
      break;
    case SurrogateMode::kRefuse:
      out.events.push_back({chunk.id, "refusal", "schema anchor not found"});
      out.refusals = 1;
      break;
    case SurrogateMode::kProliferate: {
      std::size_t n = 0;
      for (const auto& row : rows)
        for (const auto& f : row) {
          if (!text::IsNumber(f.value)) continue;
          out.nodes.push_back(
              {{f.value, f.value, "StatValue", "StatValue " + f.value}, true});
          ++n;
        }
      out.events.push_back({chunk.id, "proliferation",
                            std::to_string(n) + " ungrounded value nodes"});
      break;
    }
  }
  return out;
}

ChunkOutput ExtractBaseline(const std::vector<std::vector<ChunkField>>& rows) {
  ChunkOutput out;
  for (const auto& row : rows) {
    std::size_t first = row.size(), last = row.size();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].value.empty() || text::IsNumber(row[i].value)) continue;
      if (first == row.size()) first = i;
      last = i;
    }
    if (first == row.size()) continue;
    const std::string& entity = row[first].value;
    out.nodes.push_back({{entity, entity, "UNKNOWN", ""}, false});
    for (std::size_t i = last + 1; i < row.size(); ++i) {
      if (!text::IsNumber(row[i].value)) continue;
      if (!row[i].label.empty()) {
        EmitBinding(out, entity, row[i]);
      } else {
        Node v{row[i].value, row[i].value, "UNKNOWN", ""};
        out.nodes.push_back({v, true});
        out.edges.push_back({entity, v.id, row[i].value, ""});
      }
      break;
    }
  }
  return out;
}

void Merge(ChunkOutput& out, KnowledgeGraph& g, ExtractionResult& r) {
  std::map<std::string, std::string> rename;
  for (auto& pn : out.nodes) {
    Node n = pn.node;
    if (g.has_node(n.id)) {
      if (!pn.unique) continue;
      std::string base = n.id;
      for (std::size_t k = 2;; ++k) {
        std::string cand = base + " #" + std::to_string(k);
        if (!g.has_node(cand)) {
          n.id = cand;
          n.name = cand;
          break;
        }
      }
      rename[base] = n.id;
    }
    g.add_node(std::move(n));
  }
  for (auto& e : out.edges) {
    auto it = rename.find(e.dst);
    if (it != rename.end()) e.dst = it->second;
    g.add_edge(std::move(e));
  }
  for (auto& ev : out.events) r.events.push_back(std::move(ev));
  r.anchored_rows += out.anchored_rows;
  r.refusals += out.refusals;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const fs::path& p, const std::string& data) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write " + p.string());
  out << data;
  if (!out) throw IoError("write failure on " + p.string());
}

std::string Unquote(std::string s) {
  s = std::string(text::Trim(s));
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    s = s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

ExtractionResult surrogate_extract(const ExtractionJob& job,
                                   const MetaSchema* schema,
                                   const SurrogateConfig& cfg) {
  const ChunkSet& cs = job.chunks;
  std::optional<Anchor> anchor;
  if (schema) anchor = SchemaAnchor(*schema);
  std::vector<ChunkOutput> outputs(cs.chunks.size());
  parallel_for(cs.chunks.size(), cfg.jobs, [&](std::size_t i) {
    const Chunk& c = cs.chunks[i];
    // Naive chunks never anchor.
    bool has_header = cs.format == Format::kNaive && i == 0 && !schema;
    auto rows = chunk_rows(c, cs.format, cs.prose, has_header);
    outputs[i] = schema ? ExtractWithSchema(c, rows, anchor, cfg)
                        : ExtractBaseline(rows);
  });
  ExtractionResult r;
  for (auto& o : outputs) Merge(o, r.graph, r);
  return r;
}

void export_job(const ExtractionJob& job, const std::string& out_dir) {
  fs::path root(out_dir);
  std::error_code ec;
  fs::create_directories(root / "prompts", ec);
  if (ec) throw IoError("cannot create " + (root / "prompts").string());
  ojson m;
  m["condition"] = job.condition_label;
  m["dialect"] = to_string(job.dialect);
  m["format"] = to_string(job.chunks.format);
  m["tuple_delimiter"] = dialect_tokens(job.dialect).tuple_delimiter;
  m["chunks"] = ojson::array();
  for (const auto& c : job.chunks.chunks) {
    const std::string prompt_rel = "prompts/" + c.id + ".txt";
    WriteFile(root / prompt_rel, render_chunk_prompt(job.prompt, c.text));
    ojson e;
    e["id"] = c.id;
    e["prompt"] = prompt_rel;
    e["response"] = "responses/" + c.id + ".txt";
    e["row_span"] = {c.row_span.first, c.row_span.second};
    m["chunks"].push_back(e);
  }
  WriteFile(root / "manifest.json", m.dump(2) + "\n");
}

void parse_response(const std::string& chunk_id, const std::string& response,
                    KnowledgeGraph& g, ExtractionResult& r) {
  std::string body = text::ReplaceAll(response, "<|COMPLETE|>", "\n");
  const std::string delim =
      body.find("<|#|>") != std::string::npos ? "<|#|>" : "<|>";
  std::vector<std::string> records;
  for (auto& part : text::Split(body, "##"))
    for (auto& line : text::Split(part, "\n"))
      if (!text::Trim(line).empty()) records.emplace_back(text::Trim(line));

  std::size_t valid = 0, bad = 0;
  auto ensure = [&](const std::string& id) {
    if (!g.has_node(id)) g.add_node({id, id, "UNKNOWN", ""});
  };
  for (auto rec : records) {
    if (rec.front() == '(' && rec.back() == ')')
      rec = rec.substr(1, rec.size() - 2);
    auto fields = text::Split(rec, delim);
    if (fields.size() < 2) {
      if (rec.find(delim) == std::string::npos) continue;
    }
    std::string kind = text::ToLower(Unquote(fields[0]));
    if (kind == "entity") {
      if (fields.size() != 4 || Unquote(fields[1]).empty()) {
        ++bad;
        r.events.push_back({chunk_id, "malformed", rec});
        continue;
      }
      std::string name = Unquote(fields[1]);
      std::string type = Unquote(fields[2]);
      std::string desc = Unquote(fields[3]);
      if (g.has_node(name)) {
        Node& n = g.mutable_node(g.index_of(name));
        if (n.type.empty() || n.type == "UNKNOWN") n.type = type;
        if (!desc.empty() && n.description.find(desc) == std::string::npos)
          n.description += n.description.empty() ? desc : "\n" + desc;
      } else {
        g.add_node({name, name, type, desc});
      }
      ++valid;
    } else if (kind == "relationship" || kind == "relation") {
      if (fields.size() < 4 || Unquote(fields[1]).empty() ||
          Unquote(fields[2]).empty()) {
        ++bad;
        r.events.push_back({chunk_id, "malformed", rec});
        continue;
      }
      std::string src = Unquote(fields[1]), dst = Unquote(fields[2]);
      ensure(src);
      ensure(dst);
      Edge e{src, dst, Unquote(fields[3]),
             fields.size() > 4 ? Unquote(fields[4]) : ""};
      g.add_edge(std::move(e));
      ++valid;
    } else {
      ++bad;
      r.events.push_back({chunk_id, "malformed", rec});
    }
  }
  r.malformed += bad;
  if (valid == 0 && bad == 0) {
    ++r.refusals;
    r.events.push_back({chunk_id, "refusal", "no tuples in response"});
  }
}

ExtractionResult import_responses(const std::string& manifest_path,
                                  const std::string& responses_dir) {
  ojson m = ojson::parse(ReadFile(manifest_path), nullptr, false);
  if (m.is_discarded() || !m.is_object() || !m.contains("chunks") ||
      !m["chunks"].is_array())
    throw ParseError("malformed prompt manifest " + manifest_path, 1);
  fs::path dir(responses_dir);
  if (!fs::is_directory(dir))
    throw IoError("cannot read responses directory " + responses_dir);
  ExtractionResult r;
  for (const auto& e : m["chunks"]) {
    const std::string id = e.value("id", "");
    fs::path p = dir / (id + ".txt");
    if (!fs::exists(p)) {
      ++r.refusals;
      r.events.push_back({id, "refusal", "missing response file"});
      continue;
    }
    std::string resp = ReadFile(p);
    if (text::Trim(resp).empty()) {
      ++r.refusals;
      r.events.push_back({id, "refusal", "empty response"});
      continue;
    }
    parse_response(id, resp, r.graph, r);
  }
  return r;
}

PipelineResult run_pipeline(const CsvTable& table, const Topology& topology,
                            const MetaSchema* schema,
                            const PipelineConfig& config) {
  PipelineResult pr;
  Provenance& pv = pr.provenance;
  pv.condition_label = config.condition_label;
  GuardDecision pre =
      pre_extraction_guard(topology.tag, table.n_rows(), config.guard);
  pv.pre_guard = to_string(pre);
  const MetaSchema* used = pre == GuardDecision::kSkipSchema ? nullptr : schema;
  pv.schema_used = used != nullptr;

  auto extract = [&](const SerializeOptions& so, const MetaSchema* s) {
    ExtractionJob job;
    job.chunks = serialize(table, topology, so);
    job.dialect = config.dialect;
    job.condition_label = config.condition_label;
    job.prompt = s ? render_schema_prompt(*s, config.dialect)
                   : render_default_prompt(config.dialect);
    pv.n_chunks = job.chunks.chunks.size();
    pv.format = to_string(so.format);
    return surrogate_extract(job, s, config.surrogate);
  };

  ExtractionResult er = extract(config.serialize, used);
  pr.metrics = structural_metrics(er.graph);
  pv.edge_node_ratio = pr.metrics.edge_node_ratio;
  if (pre == GuardDecision::kSkipSchema) {
    pr.guard_decision = GuardDecision::kSkipSchema;
  } else {
    pr.guard_decision =
        degradation_guard(pr.metrics.edge_node_ratio, config.guard.theta);
  }
  pv.guard_decision = to_string(pr.guard_decision);

  if (pr.guard_decision == GuardDecision::kFallback && used &&
      config.apply_fallback) {
    SerializeOptions base = config.serialize;
    base.format = Format::kNaive;
    er = extract(base, nullptr);
    pr.metrics = structural_metrics(er.graph);
    pv.fallback_applied = true;
    pv.schema_used = false;
  }
  pv.refusals = er.refusals;
  pv.malformed = er.malformed;
  pr.graph = std::move(er.graph);
  pr.events = std::move(er.events);
  return pr;
}

}  // namespace csvkg
