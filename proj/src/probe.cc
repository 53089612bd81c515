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

#include "csvkg/probe.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"

#include "csvkg/error.h"
#include "csvkg/fidelity.h"
#include "csvkg/text.h"

namespace csvkg {
namespace {

using ojson = nlohmann::ordered_json;

bool WithinTolerance(double got, double want, double tol) {
  if (want == 0.0) return std::fabs(got) <= 1e-9;
  return std::fabs(got - want) <= tol * std::fabs(want);
}

std::string RenderSet(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  return text::Join(names, ", ");
}

bool SameSet(std::vector<std::string> a, std::vector<std::string> b) {
  auto norm = [](std::vector<std::string>& v) {
    for (auto& s : v) s = text::Normalize(s);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  norm(a);
  norm(b);
  return a == b;
}

}  // namespace

std::string to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::kRanking: return "ranking";
    case ProbeKind::kFiltering: return "filtering";
    case ProbeKind::kTrend: return "trend";
    case ProbeKind::kAggregation: return "aggregation";
  }
  return "ranking";
}

ProbeKind parse_probe_kind(const std::string& s) {
  for (ProbeKind k : {ProbeKind::kRanking, ProbeKind::kFiltering,
                      ProbeKind::kTrend, ProbeKind::kAggregation})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown probe kind: " + s);
}

std::optional<double> probe_lookup(const KnowledgeGraph& g,
                                   const std::string& entity,
                                   const std::string& year, bool* found) {
  EvidenceIndex index(g);
  auto anchors = find_anchors(index, entity);
  if (found) *found = !anchors.empty();
  if (anchors.empty()) return std::nullopt;
  const std::string want = text::YearLabel(year).empty()
                               ? std::string(text::Trim(year))
                               : text::YearLabel(year);
  auto ball = bfs_ball(g, anchors, 2);
  std::vector<std::string> texts;
  std::vector<char> seen(g.edges().size(), 0);
  for (std::size_t n : ball) {
    texts.push_back(g.nodes()[n].description);
    for (std::size_t e : g.incident(n)) {
      if (seen[e]) continue;
      seen[e] = 1;
      texts.push_back(g.edges()[e].description);
    }
  }
  for (const auto& t : texts)
    for (const auto& yv : extract_year_values(t))
      if (yv.year == want) return yv.value;
  return std::nullopt;
}

ProbeResult run_probe(const KnowledgeGraph& g, const ProbeQuery& q) {
  ProbeResult r;
  r.id = q.id;
  if (q.entities.empty())
    throw InvalidArgument("probe query " + q.id + " has no entities");

  std::vector<std::pair<std::string, double>> values;
  for (const auto& e : q.entities) {
    bool found = false;
    auto v = probe_lookup(g, e, q.year, &found);
    if (!found) {
      r.unreachable_entities.push_back(e);
      continue;
    }
    if (v) values.emplace_back(e, *v);
  }
  auto unreachable = [&] {
    r.answer = "unreachable";
    r.unreachable = true;
    r.correct = false;
    return r;
  };
  if (!r.unreachable_entities.empty()) return unreachable();

  switch (q.kind) {
    case ProbeKind::kRanking: {
      std::stable_sort(values.begin(), values.end(),
                       [&](const auto& a, const auto& b) {
                         return q.order == "asc" ? a.second < b.second
                                                 : a.second > b.second;
                       });
      std::vector<std::string> top;
      for (std::size_t i = 0; i < std::min(q.k, values.size()); ++i)
        top.push_back(values[i].first);
      r.answer = RenderSet(top);
      r.correct = top.size() == q.k && SameSet(top, q.expected_set);
      break;
    }
    case ProbeKind::kFiltering: {
      std::vector<std::string> hit;
      for (const auto& [name, v] : values) {
        bool ok = q.op == ">"    ? v > q.threshold
                  : q.op == ">=" ? v >= q.threshold
                  : q.op == "<"  ? v < q.threshold
                  : q.op == "<=" ? v <= q.threshold
                                 : v == q.threshold;
        if (ok) hit.push_back(name);
      }
      r.answer = RenderSet(hit);
      r.correct = values.size() == q.entities.size() &&
                  SameSet(hit, q.expected_set);
      break;
    }
    case ProbeKind::kAggregation: {
      if (values.size() != q.entities.size()) return unreachable();
      double acc = 0.0;
      double lo = values[0].second, hi = values[0].second;
      for (const auto& [name, v] : values) {
        acc += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      double ans = q.function == "sum"    ? acc
                   : q.function == "min"  ? lo
                   : q.function == "max"  ? hi
                   : q.function == "range" ? hi - lo
                                          : acc / values.size();
      r.answer = text::FormatNumber(ans);
      r.correct = q.expected_number &&
                  WithinTolerance(ans, *q.expected_number, q.tolerance);
      break;
    }
    case ProbeKind::kTrend: {
      if (values.empty()) return unreachable();
      bool found = false;
      auto to = probe_lookup(g, q.entities[0], q.year_to, &found);
      if (!to) return unreachable();
      double delta = *to - values[0].second;
      std::string dir = delta > 0 ? "up" : delta < 0 ? "down" : "flat";
      r.answer = dir + " " + text::FormatNumber(delta);
      r.correct = dir == q.expected_direction &&
                  (!q.expected_number ||
                   WithinTolerance(delta, *q.expected_number, q.tolerance));
      break;
    }
  }
  return r;
}

std::vector<ProbeQuery> probe_queries_from_jsonl(const std::string& input) {
  std::vector<ProbeQuery> out;
  std::istringstream in(input);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::Trim(line).empty()) continue;
    ojson o = ojson::parse(line, nullptr, false);
    if (o.is_discarded() || !o.is_object() || !o.contains("kind"))
      throw ParseError("malformed probe query", lineno);
    try {
      ProbeQuery q;
      q.id = o.value("id", "q" + std::to_string(out.size() + 1));
      q.kind = parse_probe_kind(o["kind"].get<std::string>());
      if (o.contains("entities"))
        q.entities = o["entities"].get<std::vector<std::string>>();
      if (o.contains("entity")) q.entities = {o["entity"].get<std::string>()};
      auto year_text = [&](const char* k) -> std::string {
        if (!o.contains(k)) return "";
        return o[k].is_string() ? o[k].get<std::string>() : o[k].dump();
      };
      q.year = year_text("year");
      q.year_to = year_text("year_to");
      q.k = o.value("k", std::size_t{1});
      q.order = o.value("order", std::string("desc"));
      q.op = o.value("op", std::string(">"));
      q.threshold = o.value("threshold", 0.0);
      q.function = o.value("function", std::string("mean"));
      q.tolerance = o.value("tolerance", 0.02);
      if (o.contains("expected")) {
        const auto& e = o["expected"];
        if (e.is_array()) q.expected_set = e.get<std::vector<std::string>>();
        else if (e.is_number()) q.expected_number = e.get<double>();
        else if (e.is_object()) {
          q.expected_direction = e.value("direction", std::string());
          if (e.contains("delta")) q.expected_number = e["delta"].get<double>();
        }
      }
      out.push_back(std::move(q));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(std::string("bad probe query field: ") + ex.what(),
                       lineno);
    }
  }
  return out;
}

}  // namespace csvkg
