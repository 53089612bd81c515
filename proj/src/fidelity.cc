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

#include "csvkg/fidelity.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "csvkg/text.h"

namespace csvkg {
namespace {

bool IsWordByte(char ch) {
  unsigned char c = static_cast<unsigned char>(ch);
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool BoundedContains(const std::string& hay_lower, const std::string& needle) {
  if (needle.empty()) return false;
  std::size_t pos = 0;
  while ((pos = hay_lower.find(needle, pos)) != std::string::npos) {
    bool before = pos == 0 || !IsWordByte(hay_lower[pos - 1]) ||
                  !IsWordByte(needle.front());
    std::size_t e = pos + needle.size();
    bool after = e >= hay_lower.size() || !IsWordByte(hay_lower[e]) ||
                 !IsWordByte(needle.back());
    if (before && after) return true;
    ++pos;
  }
  return false;
}

// Precomputed form of a gold value / time for repeated matching.
struct ValueKey {
  bool numeric = false;
  double number = 0.0;
  double floor2 = 0.0;
  std::string lower;
};

ValueKey MakeValueKey(const std::string& v) {
  ValueKey k;
  if (auto n = text::ParseNumber(v)) {
    k.numeric = true;
    k.number = *n;
    k.floor2 = std::trunc(*n * 100.0) / 100.0;
  }
  k.lower = text::Normalize(v);
  return k;
}

struct Unit {
  std::string raw;
  std::string lower;
  std::vector<double> numbers;
};

Unit MakeUnit(std::string raw) {
  Unit u;
  u.lower = text::ToLower(raw);
  for (const auto& t : text::NumberTokens(raw)) u.numbers.push_back(t.value);
  u.raw = std::move(raw);
  return u;
}

bool UnitHasValue(const Unit& u, const ValueKey& k, const MatchOptions& o) {
  if (k.numeric) {
    for (double n : u.numbers) {
      if (text::NumbersEqual(n, k.number, o.rel_tol)) return true;
      if (o.accept_floor2 && text::NumbersEqual(n, k.floor2, o.rel_tol))
        return true;
    }
    return false;
  }
  return BoundedContains(u.lower, k.lower);
}

struct TimeKey {
  std::string year;
  std::string lower;
  std::string lower_underscored;
};

TimeKey MakeTimeKey(const std::string& t) {
  TimeKey k;
  k.year = text::YearLabel(t);
  k.lower = text::Normalize(t);
  k.lower_underscored = k.lower;
  std::replace(k.lower_underscored.begin(), k.lower_underscored.end(), ' ',
               '_');
  return k;
}

bool UnitHasTime(const Unit& u, const TimeKey& k) {
  if (!k.year.empty()) return text::ContainsDigitBounded(u.raw, k.year);
  return BoundedContains(u.lower, k.lower) ||
         BoundedContains(u.lower, k.lower_underscored);
}

class Evaluator {
 public:
  Evaluator(const KnowledgeGraph& g, const MatchOptions& o)
      : g_(g), o_(o), index_(g) {
    for (const auto& t : index_.node_text) nodes_.push_back(MakeUnit(t));
    for (const auto& t : index_.edge_text) edges_.push_back(MakeUnit(t));
  }

  const std::vector<std::size_t>& Anchors(const std::string& subject) {
    auto it = anchors_.find(subject);
    if (it != anchors_.end()) return it->second;
    return anchors_[subject] = find_anchors(index_, subject);
  }

  struct Pool {
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> edges;
  };

  const Pool& PoolFor(const std::string& subject) {
    auto it = pools_.find(subject);
    if (it != pools_.end()) return it->second;
    Pool p;
    p.nodes = bfs_ball(g_, Anchors(subject), o_.hops);
    std::vector<char> seen(g_.edges().size(), 0);
    for (std::size_t n : p.nodes)
      for (std::size_t e : g_.incident(n))
        if (!seen[e]) {
          seen[e] = 1;
          p.edges.push_back(e);
        }
    std::sort(p.edges.begin(), p.edges.end());
    return pools_[subject] = std::move(p);
  }

  FactOutcome Evaluate(const GoldFact& f) {
    FactOutcome out;
    out.fact = f;
    const auto& anchors = Anchors(f.subject);
    for (std::size_t a : anchors) out.anchor_nodes.push_back(g_.nodes()[a].id);
    if (anchors.empty()) {
      out.error_class = ErrorClass::kEntityMissing;
      return out;
    }
    const ValueKey vk = MakeValueKey(f.value);
    const TimeKey tk = MakeTimeKey(f.time);
    const Pool& pool = PoolFor(f.subject);
    bool value_in_pool = false, time_in_pool = false;
    auto visit = [&](const Unit& u) {
      bool v = UnitHasValue(u, vk, o_);
      bool t = UnitHasTime(u, tk);
      value_in_pool |= v;
      time_in_pool |= t;
      return v && t;
    };
    for (std::size_t n : pool.nodes)
      if (visit(nodes_[n])) {
        out.covered = true;
        return out;
      }
    for (std::size_t e : pool.edges)
      if (visit(edges_[e])) {
        out.covered = true;
        return out;
      }
    bool isolated = std::all_of(anchors.begin(), anchors.end(),
                                [&](std::size_t a) { return g_.degree(a) == 0; });
    if (isolated) {
      out.error_class = ErrorClass::kEntityIsolated;
    } else if (!ValueAnywhere(vk)) {
      out.error_class = ErrorClass::kValueMissing;
    } else if (value_in_pool && !time_in_pool) {
      out.error_class = ErrorClass::kYearMissing;
    } else {
      out.error_class = ErrorClass::kValueWrongBinding;
    }
    return out;
  }

  bool ValueAnywhere(const ValueKey& vk) const {
    for (const auto& u : nodes_)
      if (UnitHasValue(u, vk, o_)) return true;
    for (const auto& u : edges_)
      if (UnitHasValue(u, vk, o_)) return true;
    return false;
  }

  bool ValueFirst(const GoldFact& f) const {
    const ValueKey vk = MakeValueKey(f.value);
    const TimeKey tk = MakeTimeKey(f.time);
    auto subject_in = [&](std::size_t n) {
      return names_match(f.subject, g_.nodes()[n].name) ||
             text::IContains(nodes_[n].raw, f.subject);
    };
    auto subject_in_edge = [&](std::size_t e) {
      return text::IContains(edges_[e].raw, f.subject);
    };
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!UnitHasValue(nodes_[i], vk, o_)) continue;
      bool subj = subject_in(i), time = UnitHasTime(nodes_[i], tk);
      for (std::size_t e : g_.incident(i)) {
        std::size_t nb = g_.other_end(e, i);
        subj = subj || subject_in(nb) || subject_in_edge(e);
        time = time || UnitHasTime(nodes_[nb], tk) || UnitHasTime(edges_[e], tk);
        if (subj && time) break;
      }
      if (subj && time) return true;
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (!UnitHasValue(edges_[e], vk, o_)) continue;
      std::size_t s = g_.edge_src(e), d = g_.edge_dst(e);
      bool subj = subject_in_edge(e) || subject_in(s) || subject_in(d);
      bool time = UnitHasTime(edges_[e], tk) || UnitHasTime(nodes_[s], tk) ||
                  UnitHasTime(nodes_[d], tk);
      if (subj && time) return true;
    }
    return false;
  }

 private:
  const KnowledgeGraph& g_;
  MatchOptions o_;
  EvidenceIndex index_;
  std::vector<Unit> nodes_;
  std::vector<Unit> edges_;
  std::unordered_map<std::string, std::vector<std::size_t>> anchors_;
  std::unordered_map<std::string, Pool> pools_;
};

std::string CanonicalValue(const std::string& v) {
  if (auto n = text::ParseNumber(v)) return text::FormatNumber(*n);
  return text::Normalize(v);
}

std::string CanonicalTime(const std::string& t) {
  std::string y = text::YearLabel(t);
  return y.empty() ? text::Normalize(t) : y;
}

}  // namespace

std::string to_string(ErrorClass e) {
  switch (e) {
    case ErrorClass::kNone: return "none";
    case ErrorClass::kEntityMissing: return "entity_missing";
    case ErrorClass::kEntityIsolated: return "entity_isolated";
    case ErrorClass::kValueMissing: return "value_missing";
    case ErrorClass::kYearMissing: return "year_missing";
    case ErrorClass::kValueWrongBinding: return "value_wrong_binding";
  }
  return "none";
}

const std::vector<ErrorClass>& error_classes() {
  static const std::vector<ErrorClass> all = {
      ErrorClass::kEntityMissing, ErrorClass::kEntityIsolated,
      ErrorClass::kValueMissing, ErrorClass::kYearMissing,
      ErrorClass::kValueWrongBinding};
  return all;
}

EvidenceIndex::EvidenceIndex(const KnowledgeGraph& g) : graph(g) {
  for (const auto& n : g.nodes()) {
    node_text.push_back(n.name + "\n" + n.description);
    lower_names.push_back(text::ToLower(text::Trim(n.name)));
  }
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& ed = g.edges()[e];
    edge_text.push_back(ed.description + "\n" + ed.keywords + "\n" +
                        g.nodes()[g.edge_src(e)].name + "\n" +
                        g.nodes()[g.edge_dst(e)].name);
  }
}

bool names_match(const std::string& subject, const std::string& node_name) {
  std::string_view s = text::Trim(subject), n = text::Trim(node_name);
  if (s.empty() || n.empty()) return false;
  return text::IContains(n, s) || text::IContains(s, n);
}

std::vector<std::size_t> find_anchors(const EvidenceIndex& index,
                                      const std::string& subject) {
  std::vector<std::size_t> out;
  const std::string s = text::ToLower(text::Trim(subject));
  if (s.empty()) return out;
  for (std::size_t i = 0; i < index.lower_names.size(); ++i) {
    const std::string& n = index.lower_names[i];
    if (n.empty()) continue;
    if (n.find(s) != std::string::npos || s.find(n) != std::string::npos)
      out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> bfs_ball(const KnowledgeGraph& g,
                                  const std::vector<std::size_t>& sources,
                                  std::size_t hops) {
  std::vector<std::size_t> dist(g.nodes().size(), SIZE_MAX);
  std::vector<std::size_t> order;
  std::deque<std::size_t> q;
  for (std::size_t s : sources) {
    if (dist[s] != SIZE_MAX) continue;
    dist[s] = 0;
    q.push_back(s);
    order.push_back(s);
  }
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop_front();
    if (dist[u] == hops) continue;
    for (std::size_t e : g.incident(u)) {
      std::size_t v = g.other_end(e, u);
      if (dist[v] != SIZE_MAX) continue;
      dist[v] = dist[u] + 1;
      q.push_back(v);
      order.push_back(v);
    }
  }
  return order;
}

bool value_matches(const std::string& t, const std::string& gold_value,
                   const MatchOptions& o) {
  return UnitHasValue(MakeUnit(t), MakeValueKey(gold_value), o);
}

bool time_matches(const std::string& t, const std::string& gold_time) {
  return UnitHasTime(MakeUnit(t), MakeTimeKey(gold_time));
}

EntityCoverage entity_coverage(const KnowledgeGraph& g, const GoldSet& gold) {
  EntityCoverage ec;
  EvidenceIndex index(g);
  ec.subjects = gold_subjects(gold);
  std::size_t hits = 0;
  for (const auto& s : ec.subjects) {
    bool hit = !find_anchors(index, s).empty();
    ec.hits.push_back(hit);
    hits += hit;
  }
  ec.ec = ec.subjects.empty() ? 0.0
                              : static_cast<double>(hits) / ec.subjects.size();
  return ec;
}

FidelityReport fact_coverage(const KnowledgeGraph& g, const GoldSet& gold,
                             const MatchOptions& o) {
  FidelityReport r;
  Evaluator ev(g, o);
  r.n_facts = gold.facts.size();
  for (ErrorClass e : error_classes()) r.taxonomy_counts[to_string(e)] = 0;
  std::size_t covered = 0;
  for (const auto& f : gold.facts) {
    FactOutcome out = ev.Evaluate(f);
    if (out.covered)
      ++covered;
    else
      ++r.taxonomy_counts[to_string(out.error_class)];
    r.outcomes.push_back(std::move(out));
  }
  r.fc = r.n_facts ? static_cast<double>(covered) / r.n_facts : 0.0;
  r.entity_coverage = entity_coverage(g, gold);
  r.ec = r.entity_coverage.ec;
  return r;
}

ValueFirstResult value_first_fc(const KnowledgeGraph& g, const GoldSet& gold,
                                const MatchOptions& o) {
  ValueFirstResult r;
  Evaluator ev(g, o);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < gold.facts.size(); ++i) {
    const GoldFact& f = gold.facts[i];
    bool vf = ev.ValueFirst(f);
    bool ef = ev.Evaluate(f).covered;
    r.covered.push_back(vf);
    covered += vf;
    if (vf && !ef) r.rescued.push_back(i);
    if (ef && !vf) r.lost.push_back(i);
  }
  r.fc = gold.facts.empty() ? 0.0
                            : static_cast<double>(covered) / gold.facts.size();
  return r;
}

std::vector<YearValue> extract_year_values(const std::string& s) {
  std::vector<YearValue> out;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  const std::size_t n = s.size();
  for (std::size_t i = 0; i + 4 <= n; ++i) {
    if (!is_digit(s[i]) || (i > 0 && is_digit(s[i - 1]))) continue;
    std::size_t j = i;
    while (j < n && is_digit(s[j])) ++j;
    if (j - i != 4 || !text::IsYearToken(s.substr(i, 4))) {
      i = j - 1;
      continue;
    }
    if (i > 0 && (s[i - 1] == '.' || s[i - 1] == ',') && i > 1 &&
        is_digit(s[i - 2])) {
      i = j - 1;
      continue;
    }
    std::size_t p = j;
    while (p < n && (s[p] == ' ' || s[p] == '\t')) ++p;
    bool sep = false;
    if (p < n && (s[p] == ':' || s[p] == '=')) {
      sep = true;
      ++p;
    } else if (p + 2 <= n && (s[p] == 'i' || s[p] == 'I') &&
               (s[p + 1] == 'n' || s[p + 1] == 'N') &&
               (p + 2 == n || !IsWordByte(s[p + 2]))) {
      sep = true;
      p += 2;
    }
    if (!sep && p == j) {
      i = j - 1;
      continue;
    }
    while (p < n && (s[p] == ' ' || s[p] == '\t')) ++p;
    auto toks = text::NumberTokens(std::string_view(s).substr(p));
    if (!toks.empty() && toks.front().begin == 0) {
      const auto& t = toks.front();
      std::string raw = s.substr(p + t.begin, t.end - t.begin);
      if (sep || !text::IsYearToken(raw))
        out.push_back({s.substr(i, 4), t.value, i});
    }
    i = j - 1;
  }
  return out;
}

std::set<Triple> gold_triples(const GoldSet& gold) {
  std::set<Triple> out;
  for (const auto& f : gold.facts)
    out.emplace(text::Normalize(f.subject), CanonicalTime(f.time),
                CanonicalValue(f.value));
  return out;
}

std::set<Triple> system_triples(const KnowledgeGraph& g,
                                const std::vector<std::string>& subjects) {
  std::set<Triple> out;
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    const Node& node = g.nodes()[i];
    std::string subject;
    for (const auto& s : subjects) {
      if (!names_match(s, node.name)) continue;
      if (subject.empty() || s.size() > subject.size() ||
          (s.size() == subject.size() && s < subject))
        subject = s;
    }
    const std::string key =
        text::Normalize(subject.empty() ? node.name : subject);
    if (key.empty()) continue;
    auto harvest = [&](const std::string& t) {
      for (const auto& yv : extract_year_values(t))
        out.emplace(key, yv.year, text::FormatNumber(yv.value));
    };
    harvest(node.description);
    for (std::size_t e : g.incident(i)) {
      harvest(g.edges()[e].description);
      harvest(g.edges()[e].keywords);
    }
  }
  return out;
}

TripleScores triple_prf(const std::set<Triple>& gold,
                        const std::set<Triple>& system) {
  TripleScores s;
  s.n_gold = gold.size();
  s.n_system = system.size();
  for (const auto& t : system) s.n_matched += gold.count(t);
  s.precision = s.n_system ? static_cast<double>(s.n_matched) / s.n_system : 0;
  s.recall = s.n_gold ? static_cast<double>(s.n_matched) / s.n_gold : 0;
  s.f1 = s.precision + s.recall > 0
             ? 2 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

TripleScores canonical_triple_f1(const KnowledgeGraph& g, const GoldSet& gold) {
  return triple_prf(gold_triples(gold), system_triples(g, gold_subjects(gold)));
}

FidelityReport evaluate(const KnowledgeGraph& g, const GoldSet& gold,
                        const MatchOptions& o) {
  FidelityReport r = fact_coverage(g, gold, o);
  ValueFirstResult vf = value_first_fc(g, gold, o);
  r.fc_value_first = vf.fc;
  r.value_first_rescued = vf.rescued.size();
  r.value_first_lost = vf.lost.size();
  TripleScores t = canonical_triple_f1(g, gold);
  r.triple_precision = t.precision;
  r.triple_recall = t.recall;
  r.triple_f1 = t.f1;
  return r;
}

}  // namespace csvkg
