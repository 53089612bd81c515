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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "csvkg/error.h"
#include "csvkg/fidelity.h"
#include "csvkg/gold.h"
#include "csvkg/graph.h"
#include "csvkg/host.h"
#include "csvkg/moderators.h"
#include "csvkg/prng.h"
#include "csvkg/schema.h"
#include "csvkg/stats.h"
#include "csvkg/table.h"
#include "csvkg/text.h"
#include "csvkg/topology.h"
#include "support/fixtures.h"
#include "support/oracles.h"

namespace {

using namespace csvkg;
using namespace csvkg::testing;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Outcome ClassifierRegression() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t ok = 0;
  std::string bad;
  const auto& cases = regression_cases();
  for (const auto& c : cases) {
    ClassifierConfig cfg;
    cfg.legacy = c.legacy;
    Topology t = classify(c.features.to_features(), cfg);
    if (t.tag == c.expected) {
      ++ok;
    } else {
      bad += " " + c.id;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok == cases.size() && secs < 1.0,
          std::to_string(ok) + "/" + std::to_string(cases.size()) + " vectors in " +
              Num(secs, 4) + " s" + (bad.empty() ? "" : "; mismatched:" + bad)};
}

Outcome InteractionArithmetic() {
  double wb = interaction_term(1.000, 0.000, 0.007, 0.187);
  double who = interaction_term(1.000, 0.033, 0.363, 0.170);
  bool pass = std::fabs(wb - 1.180) < 1e-12 && std::fabs(who - 0.773) <= 0.001 + 1e-12 &&
              std::fabs(who - 0.774) < 1e-12;
  return {pass, "WB Pop " + Num(wb, 3) + ", WHO 50c " + Num(who, 3)};
}

Outcome McNemar() {
  double chi = mcnemar(35, 1, false);
  return {std::fabs(chi - 32.11) <= 0.01, "chi2 = " + Num(chi, 4)};
}

Outcome Cds() {
  CdsResult r = cds_from_components(0.038, 10.5);
  return {std::fabs(r.cds - 0.020) <= 0.0005, "CDS = " + Num(r.cds, 5)};
}

Outcome Scs() {
  CsvTable table = wide_matrix(20);
  Topology topo = classify_table(table, extract_features(table));
  MetaSchema full = induce_schema(table, topo);
  double s_full = compute_scs(full, table);

  CsvTable small = parse_csv_text("Region,Country,2000,2001\nA,B,1.5,2.5\n");
  MetaSchema half;
  half.entity_types.push_back({"Country", std::string("Country"), "", EntityKind::kSubject, false});
  half.entity_types.push_back({"Region", std::nullopt, "", EntityKind::kSubject, false});
  half.relation_templates.push_back({"has_value_in_year", "Country", {"2000"}, "StatValue"});
  half.type_validity = TypeValidity::kDegraded;
  double s_half = compute_scs(half, small);
  return {s_full == 1.0 && s_half == 0.35,
          "full " + Num(s_full, 4) + ", half-degraded " + Num(s_half, 4)};
}

Outcome FcOracle() {
  std::size_t agree = 0, covered_facts = 0, total_facts = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RandomInstance inst = random_instance(seed);
    FidelityReport r = fact_coverage(inst.graph, inst.gold);
    bool same = std::fabs(r.fc - oracle_fc(inst.graph, inst.gold)) < 1e-12;
    for (std::size_t i = 0; i < inst.gold.facts.size(); ++i) {
      bool o = oracle_fact_covered(inst.graph, inst.gold.facts[i]);
      same = same && o == r.outcomes[i].covered;
      covered_facts += o;
      ++total_facts;
    }
    agree += same;
  }
  return {agree == 200, std::to_string(agree) + "/200 instances agree (" +
                            std::to_string(covered_facts) + "/" +
                            std::to_string(total_facts) + " facts covered)"};
}

Outcome DetparseRoundTrip() {
  CsvTable table = wide_matrix(60);
  const auto& years = standard_gold_years();
  GoldSet gold = generate_gold(table, "Country Name", 50, years, 42, "wide");
  KnowledgeGraph g = deterministic_parse(table, "Country Name", years);
  FidelityReport r = evaluate(g, gold);
  bool pass = r.fc == 1.0 && r.ec == 1.0;

  CsvTable damaged = table;
  const std::size_t k = 37;
  for (std::size_t i = 0; i < k; ++i) {
    const GoldFact& f = gold.facts[(i * 7) % gold.facts.size()];
    damaged.rows[f.row][f.col].clear();
  }
  std::set<std::size_t> deleted;
  for (std::size_t i = 0; i < k; ++i) deleted.insert((i * 7) % gold.facts.size());
  KnowledgeGraph g2 = deterministic_parse(damaged, "Country Name", years);
  FidelityReport r2 = evaluate(g2, gold);
  double expected = 1.0 - static_cast<double>(deleted.size()) / gold.facts.size();
  pass = pass && std::fabs(r2.fc - expected) < 1e-12;
  return {pass, "dense FC=" + Num(r.fc, 3) + " EC=" + Num(r.ec, 3) + "; " +
                    std::to_string(deleted.size()) + " cells deleted FC=" +
                    Num(r2.fc, 4) + " expected " + Num(expected, 4)};
}

Outcome StatisticsOracles() {
  bool pass = true;
  std::string detail;
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Rng rng(seed);
    std::size_t n = 1 + rng.Below(10);
    std::vector<double> d;
    for (std::size_t i = 0; i < n; ++i)
      d.push_back(std::round((rng.Uniform() - 0.4) * 8.0) / 4.0);
    PermutationOptions po;
    PermutationResult r = permutation_test(d, po);
    bool all_zero = true;
    for (double x : d) all_zero = all_zero && x == 0.0;
    double oracle = all_zero ? 1.0 : oracle_sign_flip_p(d);
    if (std::fabs(r.p - oracle) > 1.0 / (po.n_perm + 1)) pass = false;
    ++checked;
  }
  detail += std::to_string(checked) + " permutation cases";

  std::vector<double> ones(40, 1.0), zeros(40, 0.0);
  Interval ci = bootstrap_ci(ones, zeros, zeros, ones, {});
  Interval cm = bootstrap_mean_ci(std::vector<double>(25, 0.6), {});
  bool degenerate = ci.high - ci.low == 0.0 && cm.high - cm.low == 0.0;
  pass = pass && degenerate;
  detail += ", bootstrap width " + Num(ci.high - ci.low, 3);

  std::vector<double> ps = {0.04, 0.20, 0.0031, 0.5, 0.9};
  FisherResult f = fisher_combined(ps);
  double closed = 0;
  for (double p : ps) closed += -2.0 * std::log(p);
  bool fisher_ok = std::fabs(f.chi_square - closed) <= 1e-9 * closed && f.df == 10;
  pass = pass && fisher_ok;
  detail += ", Fisher chi2 " + Num(f.chi_square, 6) + " vs " + Num(closed, 6);
  return {pass, detail};
}

double ConditionFc(const CsvTable& table, const Topology& topo, const MetaSchema* schema,
                   Format format, SurrogateMode mode, const GoldSet& gold,
                   PipelineResult* out = nullptr) {
  PipelineConfig pc;
  pc.serialize.format = format;
  pc.surrogate.mode = mode;
  pc.apply_fallback = false;
  PipelineResult r = run_pipeline(table, topo, schema, pc);
  double fc = evaluate(r.graph, gold).fc;
  if (out) *out = std::move(r);
  return fc;
}

Outcome CouplingReproduction() {
  CsvTable table = wide_matrix(60);
  Topology topo = classify_table(table, extract_features(table));
  MetaSchema schema = induce_schema(table, topo);
  GoldSet gold = generate_gold(table, "Country Name", 25, standard_gold_years(), 42, "wide");

  double base = ConditionFc(table, topo, nullptr, Format::kNaive, SurrogateMode::kFaithful, gold);
  double serial = ConditionFc(table, topo, nullptr, Format::kSge, SurrogateMode::kFaithful, gold);
  PipelineResult prolif, faithful_naive, dropped;
  double schema_only = ConditionFc(table, topo, &schema, Format::kNaive,
                                   SurrogateMode::kProliferate, gold, &prolif);
  ConditionFc(table, topo, &schema, Format::kNaive, SurrogateMode::kFaithful, gold,
              &faithful_naive);
  double full = ConditionFc(table, topo, &schema, Format::kSge, SurrogateMode::kFaithful, gold);
  ConditionFc(table, topo, &schema, Format::kSge, SurrogateMode::kRelationDrop, gold, &dropped);
  FidelityReport drop_report = evaluate(dropped.graph, gold);

  double delta = interaction_term(full, serial, schema_only, base);
  std::size_t n_prolif = prolif.graph.nodes().size();
  std::size_t n_faith = faithful_naive.graph.nodes().size();
  bool pass = delta > 0 && schema_only < base && n_prolif > n_faith &&
              drop_report.ec > 0 && drop_report.fc == 0.0;
  return {pass, "FC base=" + Num(base, 3) + " serial=" + Num(serial, 3) +
                    " schema=" + Num(schema_only, 3) + " full=" + Num(full, 3) +
                    " delta_int=" + Num(delta, 3) + "; nodes proliferate=" +
                    std::to_string(n_prolif) + " faithful=" + std::to_string(n_faith) +
                    "; relation_drop EC=" + Num(drop_report.ec, 3) +
                    " FC=" + Num(drop_report.fc, 3)};
}

Outcome GuardBehavior() {
  GuardDecision a = degradation_guard(0.793, 0.90);
  GuardDecision b = degradation_guard(0.943, 0.90);
  GuardDecision c = pre_extraction_guard(TopologyTag::kTypeIII, 19, {});

  CsvTable small = parse_csv_text(inpatient_csv(19));
  Topology topo = classify_table(small, extract_features(small));
  MetaSchema schema = induce_schema(small, topo);
  PipelineResult r = run_pipeline(small, topo, &schema, {});
  bool pass = a == GuardDecision::kFallback && b == GuardDecision::kProceed &&
              c == GuardDecision::kSkipSchema && topo.tag == TopologyTag::kTypeIII &&
              r.provenance.guard_decision == "skip_schema" && !r.provenance.schema_used;
  return {pass, "0.793->" + to_string(a) + ", 0.943->" + to_string(b) +
                    ", TypeIII/19 rows->" + to_string(c) + " (pipeline " +
                    r.provenance.guard_decision + ")"};
}

std::string Quote(const std::string& s) { return "'" + s + "'"; }

Outcome Determinism() {
  const std::string cli = CSVKG_CLI_PATH;
  const std::string dir = temp_dir("acceptance-determinism");
  const std::string csv = write_file(dir, "wide.csv", wide_matrix_csv(60));
  const std::string csv2 = write_file(dir, "wide2.csv", wide_matrix_csv(30, 11));
  const std::string small = write_file(dir, "inpatient.csv", inpatient_csv(19));
  std::string out;
  run_command(Quote(cli) + " induce " + Quote(csv) + " -o " + Quote(dir + "/schema.json") + " 2>/dev/null", &out);
  run_command(Quote(cli) + " serialize " + Quote(csv) + " --format sge -o " +
                  Quote(dir + "/chunks.jsonl") + " 2>/dev/null", &out);
  run_command(Quote(cli) + " gold gen " + Quote(csv) +
                  " --subject-col 'Country Name' --n 25 --years 2000,2005,2010,2015,2019,2021 -o " +
                  Quote(dir + "/gold.jsonl") + " 2>/dev/null", &out);
  std::vector<double> diffs;
  Rng rng(5);
  for (int i = 0; i < 40; ++i) diffs.push_back(std::round(rng.Uniform() * 10 - 4) / 10);
  std::string dl;
  for (double d : diffs) dl += (dl.empty() ? "" : ",") + text::FormatNumber(d);
  std::string cells = "{";
  const char* conds[] = {"full", "serial_only", "schema_only", "baseline"};
  for (int c = 0; c < 4; ++c) {
    cells += std::string(c ? "," : "") + "\"" + conds[c] + "\":[";
    for (int i = 0; i < 300; ++i) cells += std::string(i ? "," : "") + (rng.Coin() ? "1" : "0");
    cells += "]";
  }
  cells += "}";
  write_file(dir, "cells.json", cells);
  write_file(dir, "manifest.json",
             "{\"datasets\":[{\"dataset_id\":\"a\",\"csv\":\"wide.csv\",\"subject_col\":\"Country Name\","
             "\"gold\":{\"n_entities\":25,\"years\":[\"2000\",\"2005\",\"2010\",\"2015\",\"2019\",\"2021\"]}},"
             "{\"dataset_id\":\"b\",\"csv\":\"wide2.csv\",\"subject_col\":\"Country Name\"},"
             "{\"dataset_id\":\"c\",\"csv\":\"inpatient.csv\",\"subject_col\":\"Disease Category\","
             "\"gold\":{\"n_entities\":4,\"years\":[\"Discharges\",\"Beds\"]}}]}");

  struct Cmd {
    std::string name;
    std::string args;
    bool takes_jobs;
  };
  std::vector<Cmd> cmds = {
      {"gold gen", "gold gen " + Quote(csv) +
                       " --subject-col 'Country Name' --n 50 --years 2000,2005,2010,2015,2019,2021 --seed 42",
       false},
      {"perturb-schema D1", "perturb-schema " + Quote(dir + "/schema.json") + " --condition D1 --seed 42", false},
      {"ablate M5", "ablate " + Quote(dir + "/chunks.jsonl") + " --condition M5 --seed 42", false},
      {"ablate M6", "ablate " + Quote(dir + "/chunks.jsonl") + " --condition M6 --seed 42", false},
      {"stats permutation", "stats permutation --diffs " + dl + " --seed 42", true},
      {"stats bootstrap", "stats bootstrap --values " + dl + " --seed 42", true},
      {"stats interaction", "stats interaction --cells " + Quote(dir + "/cells.json") + " --seed 42", true},
      {"extract surrogate", "extract " + Quote(csv) + " --schema " + Quote(dir + "/schema.json") +
                                " --format sge", true},
      {"factorial", "factorial " + Quote(dir + "/manifest.json") + " --n-perm 2000", true},
  };
  std::size_t ok = 0;
  std::string bad;
  for (const auto& c : cmds) {
    std::string a, b, j8;
    int ra = run_command(Quote(cli) + " " + c.args + " 2>/dev/null", &a);
    int rb = run_command(Quote(cli) + " " + c.args + " 2>/dev/null", &b);
    bool same = ra == 0 && rb == 0 && !a.empty() && a == b;
    if (c.takes_jobs) {
      std::string a1;
      int r1 = run_command(Quote(cli) + " " + c.args + " --jobs 1 2>/dev/null", &a1);
      int r8 = run_command(Quote(cli) + " " + c.args + " --jobs 8 2>/dev/null", &j8);
      same = same && r1 == 0 && r8 == 0 && a1 == j8 && a1 == a;
    }
    if (same) {
      ++ok;
    } else {
      bad += " [" + c.name + "]";
    }
  }
  return {ok == cmds.size(), std::to_string(ok) + "/" + std::to_string(cmds.size()) +
                                 " subcommands byte-identical (2 runs, --jobs 1 vs 8)" +
                                 (bad.empty() ? "" : "; differing:" + bad)};
}

// Independent cell lookup: locate the subject's line and the year's header
// position with a minimal quote-aware splitter over the raw CSV text.
std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> out(1);
  bool q = false;
  for (char c : line) {
    if (c == '"') {
      q = !q;
    } else if (c == ',' && !q) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

Outcome GoldGeneration() {
  const std::string raw = wide_matrix_csv(60);
  CsvTable table = parse_csv_text(raw);
  GoldSet gold = generate_gold(table, "Country Name", 50, standard_gold_years(), 42, "wide");
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(raw);
  std::string line;
  while (std::getline(in, line)) lines.push_back(SplitLine(line));
  std::size_t matched = 0;
  std::set<std::string> subjects;
  for (const auto& f : gold.facts) {
    subjects.insert(f.subject);
    std::size_t col = 0;
    while (col < lines[0].size() && lines[0][col] != f.time) ++col;
    for (std::size_t r = 1; r < lines.size(); ++r) {
      if (lines[r][0] != f.subject) continue;
      if (col < lines[r].size() && lines[r][col] == f.value) ++matched;
      break;
    }
  }
  bool pass = gold.facts.size() == 300 && matched == 300 && subjects.size() == 50;
  return {pass, std::to_string(gold.facts.size()) + " facts, " + std::to_string(subjects.size()) +
                    " entities, " + std::to_string(matched) + " equal to source cells"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"classifier regression", ClassifierRegression},
      {"interaction arithmetic", InteractionArithmetic},
      {"mcnemar", McNemar},
      {"cds", Cds},
      {"scs", Scs},
      {"fc oracle equivalence", FcOracle},
      {"deterministic parser round trip", DetparseRoundTrip},
      {"statistics oracles", StatisticsOracles},
      {"coupling reproduction", CouplingReproduction},
      {"guard behavior", GuardBehavior},
      {"determinism", Determinism},
      {"gold generation", GoldGeneration},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
